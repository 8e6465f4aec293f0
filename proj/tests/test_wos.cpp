#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"
#include "hmdf/wos.hpp"

using namespace hmdf;

namespace {

constexpr double kPi = std::numbers::pi;

WosOptions walks(long long n, std::uint64_t seed = 1) {
  WosOptions w;
  w.samples = n;
  w.seed = seed;
  return w;
}

const BlockedCircleDomain kBlocked{CircleDomain::from({1.0, 1.3, 1.8}, {1.2, 2.0, kPi}), {0.7, 0.0}};

}  // namespace

TEST(Wos, DiskExitsAtOuterRadius) {
  const ExitEnsemble e = wos_ensemble(CircleDomain::disk(2.0), walks(1000));
  for (const ExitRecord& r : e.exits) {
    EXPECT_EQ(r.modulus, 2.0);
    EXPECT_EQ(r.feature().kind, FeatureKind::outer);
  }
  const HFunctionTable t = e.table({1.0, 1.999, 2.0, 3.0});
  EXPECT_EQ(t.estimates[0].value, 0.0);
  EXPECT_EQ(t.estimates[1].value, 0.0);
  EXPECT_EQ(t.estimates[2].value, 1.0);
  EXPECT_EQ(t.estimates[3].value, 1.0);
}

TEST(Wos, UnitDiskExitAngleIsUniform) {
  const ExitEnsemble e = wos_ensemble(CircleDomain::disk(1.0), walks(100000, 3));
  std::vector<double> u;
  for (const ExitRecord& r : e.exits) u.push_back((std::atan2(r.y, r.x) + kPi) / (2.0 * kPi));
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double D = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) D = std::max({D, (i + 1) / n - u[i], u[i] - i / n});
  // Kolmogorov critical value at the 1% level.
  EXPECT_LT(std::sqrt(n) * D, 1.628);
}

TEST(Wos, SymmetricDomainGivesSymmetricExits) {
  const ExitEnsemble e = wos_ensemble(kBlocked, walks(100000, 4));
  long long upper = 0, lower = 0;
  for (const ExitRecord& r : e.exits) {
    if (r.y > 0.0f) ++upper;
    if (r.y < 0.0f) ++lower;
  }
  const double n = static_cast<double>(upper + lower);
  EXPECT_LT(std::abs(upper - lower) / n, 3.0 / std::sqrt(n));
}

TEST(Wos, NormalizationAndClosure) {
  const ExitEnsemble e = wos_ensemble(kBlocked, walks(50000, 5));
  double total = 0.0;
  total += e.measure(FeatureSelector::arc(0)).value;
  total += e.measure(FeatureSelector::arc(1)).value;
  total += e.measure(FeatureSelector::outer()).value;
  total += e.measure(FeatureSelector::all_gates()).value;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_LT(static_cast<double>(e.discards) / e.exits.size(), 1e-3);
  EXPECT_EQ(e.h(kBlocked.base.M()).value, 1.0);
}

TEST(Wos, HTableIsNondecreasing) {
  std::vector<double> radii;
  for (int i = 0; i <= 100; ++i) radii.push_back(0.9 + i * 0.01);
  const HFunctionTable t = estimate_h(kBlocked, radii, walks(20000, 6));
  for (std::size_t i = 1; i < radii.size(); ++i) EXPECT_GE(t.estimates[i].value, t.estimates[i - 1].value);
  for (const MeasureEstimate& m : t.estimates) EXPECT_EQ(m.method, Method::wos);
}

TEST(Wos, IndependentOfThreadCount) {
  WosOptions a = walks(20000, 9), b = a;
  a.threads = 1;
  b.threads = 3;
  const ExitEnsemble ea = wos_ensemble(kBlocked, a);
  const ExitEnsemble eb = wos_ensemble(kBlocked, b);
  ASSERT_EQ(ea.exits.size(), eb.exits.size());
  for (std::size_t i = 0; i < ea.exits.size(); ++i) {
    EXPECT_EQ(ea.exits[i].modulus, eb.exits[i].modulus);
    EXPECT_EQ(ea.exits[i].index, eb.exits[i].index);
  }
}

TEST(Wos, ReflectedDrawsArePairedMirrorImages) {
  WosOptions a = walks(20000, 10), b = a;
  b.reflect = true;
  const ExitEnsemble ea = wos_ensemble(kBlocked, a);
  const ExitEnsemble eb = wos_ensemble(kBlocked, b);
  long long same = 0;
  for (std::size_t i = 0; i < ea.exits.size(); ++i) {
    const ExitRecord& x = ea.exits[i];
    const ExitRecord& y = eb.exits[i];
    if (std::abs(x.modulus - y.modulus) < 1e-9 && x.kind == y.kind && x.index == y.index &&
        std::abs(x.y + y.y) < 1e-4f) {
      ++same;
    }
  }
  EXPECT_GE(static_cast<double>(same) / ea.exits.size(), 0.999);
  for (double r : {1.0, 1.3, 1.5, 1.8}) {
    const MeasureEstimate ha = ea.h(r), hb = eb.h(r);
    EXPECT_LE(std::abs(ha.value - hb.value), 3.0 * std::hypot(ha.std_error, hb.std_error) + 1e-4);
  }
}

TEST(Wos, MonotoneInTheDomain) {
  // A longer inner arc removes more of the disk; the outer circle is shared.
  const CircleDomain small = CircleDomain::from({1.0, 2.0}, {2.0, kPi});
  const CircleDomain large = CircleDomain::from({1.0, 2.0}, {1.0, kPi});
  const MeasureEstimate a = wos_ensemble(small, walks(100000, 11)).measure(FeatureSelector::outer());
  const MeasureEstimate b = wos_ensemble(large, walks(100000, 12)).measure(FeatureSelector::outer());
  EXPECT_LE(a.value, b.value + 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Wos, SimplyConnectedDomainRespectsBeurling) {
  std::vector<double> radii;
  for (int i = 0; i <= 40; ++i) radii.push_back(1.0 + 0.02 * i);
  const HFunctionTable t = estimate_h(kBlocked, radii, walks(50000, 13));
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const MeasureEstimate& m = t.estimates[i];
    EXPECT_GE(m.value, beurling_lower_bound(1.0, radii[i]) - 3.0 * m.std_error);
  }
}

TEST(Wos, OffCenterDiskMatchesExact) {
  const OffCenterDisk D({0.5, 0.0}, 1.0);
  const HFunctionTable t = estimate_h(D, {0.75, 1.0, 1.25}, walks(200000, 14));
  for (std::size_t i = 0; i < 3; ++i) {
    const double exact = exact_offcenter_disk_h(0.5, 1.0, t.radii[i]);
    EXPECT_NEAR(t.estimates[i].value, exact, 3.0 * t.estimates[i].std_error);
  }
}

TEST(Wos, RejectsExteriorStart) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(wos_exit_sample(kBlocked, {5.0, 0.0}, 1e-5, rng), InputError);
  EXPECT_THROW(wos_exit_sample(kBlocked, std::polar(1.1, 0.1), 1e-5, rng), InputError);
}

TEST(Wos, SeedsAreReproducible) {
  const ExitEnsemble a = wos_ensemble(kBlocked, walks(5000, 15));
  const ExitEnsemble b = wos_ensemble(kBlocked, walks(5000, 15));
  for (std::size_t i = 0; i < a.exits.size(); ++i) EXPECT_EQ(a.exits[i].modulus, b.exits[i].modulus);
  EXPECT_NE(walk_seed(1, 0), walk_seed(1, 1));
  EXPECT_NE(walk_seed(1, 0), walk_seed(2, 0));
}
