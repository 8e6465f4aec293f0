#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"
#include "hmdf/hfunction.hpp"

using namespace hmdf;

namespace {

const SegmentKind L = SegmentKind::linear;
const SegmentKind C = SegmentKind::constant;

// Random nondecreasing piecewise linear f with a jump at mu, values in (0, 1).
CandidateH random_candidate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int m = 2 + static_cast<int>(u(rng) * 4);
  std::vector<double> b{1.0}, v{0.2 + 0.3 * u(rng)};
  for (int i = 1; i < m; ++i) {
    b.push_back(b.back() + 0.01 + 0.05 * u(rng));
    v.push_back(v.back() + (1.0 - v.back()) * (0.1 + 0.4 * u(rng)));
  }
  b.push_back(b.back() + 0.02);
  v.push_back(1.0);
  return CandidateH(b, v, std::vector<SegmentKind>(m, L));
}

}  // namespace

TEST(Evaluate, JumpRampValues) {
  const CandidateH f = example_jump_ramp();
  EXPECT_EQ(f(1.0), 0.5);
  EXPECT_NEAR(f(1.0496), 0.75, 1e-15);
  EXPECT_EQ(f(0.5), 0.0);
  EXPECT_EQ(f(1.0992), 1.0);
  EXPECT_EQ(f(5.0), 1.0);
  EXPECT_THROW(f(0.0), InputError);
}

TEST(Evaluate, RightContinuousAndMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const CandidateH f = random_candidate(rng);
    for (double b : f.breakpoints()) {
      EXPECT_NEAR(f(b + 1e-12), f(b), 1e-9);
      EXPECT_LE(f.left_limit(b), f(b));
    }
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double r = 0.9 + (f.M() + 0.1 - 0.9) * i / 1000;
      EXPECT_GE(f(r), prev);
      prev = f(r);
    }
  }
}

TEST(Secant, JumpRampAlphaBeta) {
  const CandidateH f = example_jump_ramp();
  EXPECT_NEAR(minimal_secant_slope(f), 0.5, 1e-15);
  EXPECT_EQ(jump_at_mu(f), 0.5);
}

TEST(Secant, LinearFromZeroIsOne) {
  const CandidateH f({1.0, 2.0}, {0.0, 1.0}, {L});
  EXPECT_NEAR(minimal_secant_slope(f), 1.0, 1e-15);
  EXPECT_EQ(jump_at_mu(f), 0.0);
}

TEST(Secant, FlatSegmentGivesZero) {
  const CandidateH f({1.0, 1.5, 1.7, 2.0}, {0.2, 0.5, 0.5, 1.0}, {L, C, L});
  EXPECT_EQ(minimal_secant_slope(f), 0.0);
}

TEST(Secant, StepToOneAtMu) {
  const CandidateH f({1.0, 2.0}, {1.0, 1.0}, {C});
  EXPECT_EQ(jump_at_mu(f), 1.0);
}

TEST(Secant, MatchesDenseSecantSearch) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const CandidateH f = random_candidate(rng);
    const int N = 400;
    double dense = INFINITY;
    for (int i = 0; i <= N; ++i) {
      for (int j = i + 1; j <= N; ++j) {
        const double a = f.mu() + (f.M() - f.mu()) * i / N;
        const double b = f.mu() + (f.M() - f.mu()) * j / N;
        dense = std::min(dense, (f.left_limit(b) - f(a)) / (b - a));
      }
    }
    const double alpha = minimal_secant_slope(f);
    EXPECT_LE(alpha, (f.M() - f.mu()) * dense + 1e-12);
    // Segment slopes are approached by short secants inside the segment.
    EXPECT_GE(alpha, (f.M() - f.mu()) * dense - 1e-2);
  }
}

TEST(Steps, JumpRampTwo) {
  const StepH s = step_approximation(example_jump_ramp(), 2);
  ASSERT_EQ(s.radii.size(), 3u);
  EXPECT_EQ(s.radii[0], 1.0);
  EXPECT_NEAR(s.radii[1], 1.0496, 1e-15);
  EXPECT_EQ(s.radii[2], 1.0992);
  EXPECT_EQ(s.values[0], 0.5);
  EXPECT_NEAR(s.values[1], 0.75, 1e-15);
  EXPECT_EQ(s.values[2], 1.0);
}

TEST(Steps, SingleInterval) {
  const StepH s = step_approximation(example_jump_ramp(), 1);
  EXPECT_EQ(s.radii, (std::vector<double>{1.0, 1.0992}));
  EXPECT_EQ(s.values, (std::vector<double>{0.5, 1.0}));
  EXPECT_THROW(step_approximation(example_jump_ramp(), 0), InputError);
}

TEST(Steps, GridStepFunctionIsReproduced) {
  const CandidateH f({1.0, 1.5, 2.0}, {0.3, 0.6, 1.0}, {C, C});
  const StepH s = step_approximation(f, 4);
  EXPECT_EQ(s.radii, (std::vector<double>{1.0, 1.5, 2.0}));
  EXPECT_EQ(s.values, (std::vector<double>{0.3, 0.6, 1.0}));
}

TEST(Steps, BelowFWithEqualityOnGrid) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CandidateH f = random_candidate(rng);
    for (int n : {1, 3, 8}) {
      const StepH s = step_approximation(f, n);
      for (double r : step_grid(f, n)) EXPECT_EQ(s(r), f(r));
      for (int i = 0; i <= 500; ++i) {
        const double r = 0.95 + (f.M() + 0.05 - 0.95) * i / 500;
        EXPECT_LE(s(r), f(r));
      }
      EXPECT_GE(grid_secant_slope(s), minimal_secant_slope(f) - 1e-12);
    }
  }
}

TEST(Steps, ValidateRejectsBadSteps) {
  EXPECT_THROW(validate(StepH{{1.0, 2.0}, {0.5, 0.4}}), InputError);
  EXPECT_THROW(validate(StepH{{2.0, 1.0}, {0.5, 1.0}}), InputError);
  EXPECT_THROW(validate(StepH{{1.0, 2.0}, {0.5, 0.9}}), InputError);
  EXPECT_NO_THROW(validate(StepH{{1.0, 2.0}, {0.5, 1.0}}));
}

TEST(Necessary, JumpRampPasses) {
  const NecessaryReport r = necessary_checks(example_jump_ramp());
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.first_violation.has_value());
}

TEST(Necessary, BelowBeurlingIsReported) {
  // Linear interpolation of the Beurling bound at r = 1.5 and 2, lowered by 0.01.
  const double mu = 1.0;
  const double b15 = beurling_lower_bound(mu, 1.5) - 0.01;
  const CandidateH f({1.0, 1.5, 2.0}, {0.05, b15, 1.0}, {L, L});
  const NecessaryReport r = necessary_checks(f);
  EXPECT_FALSE(r.beurling_ok);
  ASSERT_TRUE(r.first_violation.has_value());
  EXPECT_GT(*r.first_violation, 1.0);
  EXPECT_LT(f(*r.first_violation), beurling_lower_bound(mu, *r.first_violation));
}

TEST(Necessary, NonMonotoneIsReported) {
  const CandidateH f({1.0, 1.5, 2.0}, {0.6, 0.4, 1.0}, {C, L});
  const NecessaryReport r = necessary_checks(f);
  EXPECT_FALSE(r.monotone);
  EXPECT_FALSE(r.pass());
}

TEST(Necessary, VanishingInsideIsReported) {
  const CandidateH f({1.0, 1.5, 2.0}, {0.0, 0.0, 1.0}, {C, L});
  EXPECT_FALSE(necessary_checks(f).positive_inside);
}

TEST(Inverse, JumpRamp) {
  const CandidateH f = example_jump_ramp();
  EXPECT_NEAR(inverse(f, 0.75), 1.0496, 1e-15);
  EXPECT_EQ(inverse(f, 0.3), 1.0);
  EXPECT_EQ(inverse(f, 0.0), 1.0);
  EXPECT_EQ(inverse(f, 1.0), 1.0992);
}

TEST(Inverse, RoundTripOnIncreasingPart) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const CandidateH f = random_candidate(rng);
    for (int i = 1; i < 200; ++i) {
      const double r = f.mu() + (f.M() - f.mu()) * i / 200;
      EXPECT_NEAR(inverse(f, f(r)), r, 1e-12);
    }
  }
}

TEST(Inverse, RejectsFlatSegments) {
  const CandidateH f({1.0, 1.5, 2.0}, {0.2, 0.5, 1.0}, {L, C}, {0.5, 0.5});
  EXPECT_THROW(inverse(f, 0.5), InputError);
}
