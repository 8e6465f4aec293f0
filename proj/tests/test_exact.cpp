#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"

using namespace hmdf;

namespace {

constexpr double kPi = std::numbers::pi;

// Harmonic measure from 0 of {zeta in boundary of B(a, R) : |zeta| <= r} by integrating the
// Poisson kernel (R^2 - a^2) / |a + R e^{it}|^2 dt / (2 pi) with the midpoint rule.
double poisson_offcenter(double a, double R, double r, int steps) {
  double total = 0.0;
  const double dt = 2.0 * kPi / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = (i + 0.5) * dt;
    const Point zeta = Point(a, 0.0) + std::polar(R, t);
    if (std::abs(zeta) <= r) total += (R * R - a * a) / std::norm(zeta) * dt;
  }
  return total / (2.0 * kPi);
}

}  // namespace

TEST(Beurling, Values) {
  EXPECT_EQ(beurling_lower_bound(1.0, 1.0), 0.0);
  EXPECT_EQ(beurling_lower_bound(2.5, 2.5), 0.0);
  EXPECT_NEAR(beurling_lower_bound(1.0, 4.0), 0.40966552939826690, 1e-15);
  double prev = 0.0;
  for (double r = 1.0; r < 1e6; r *= 1.5) {
    EXPECT_GE(beurling_lower_bound(1.0, r), prev);
    prev = beurling_lower_bound(1.0, r);
  }
  EXPECT_GT(prev, 0.99);
  EXPECT_THROW(beurling_lower_bound(1.0, 0.5), InputError);
}

TEST(SlitDisk, ClosedFormValues) {
  EXPECT_EQ(exact_slit_disk_gate(1.0, 1.0, 2.0), 0.0);
  EXPECT_NEAR(exact_slit_disk_gate(1.0, 1.5, 2.0), 0.19683858159630997, 1e-15);
  EXPECT_NEAR(exact_slit_disk_gate(1.0, 2.0, 2.0), 0.21634689593878546, 1e-15);
  EXPECT_NEAR(exact_slit_disk_gate(1.0, 1.01, 3.0), 0.044801377343095242, 1e-15);
  EXPECT_THROW(exact_slit_disk_gate(1.0, 0.5, 2.0), InputError);
  EXPECT_THROW(exact_slit_disk_gate(1.0, 2.5, 2.0), InputError);
}

TEST(SlitDisk, ConformalMapAgrees) {
  for (double rk : {0.3, 1.0, 1.7}) {
    for (double f1 : {0.0, 0.1, 0.5, 1.0}) {
      for (double M : {2.0, 5.0}) {
        const double rk1 = rk + f1 * (M - rk);
        EXPECT_NEAR(slit_disk_gate_via_map(rk, rk1, M), exact_slit_disk_gate(rk, rk1, M), 1e-13);
      }
    }
  }
}

TEST(OffCenter, CenteredDiskIsAStep) {
  EXPECT_EQ(exact_offcenter_disk_h(0.0, 1.0, 0.99), 0.0);
  EXPECT_EQ(exact_offcenter_disk_h(0.0, 1.0, 1.0), 1.0);
}

TEST(OffCenter, RegressionValues) {
  EXPECT_EQ(exact_offcenter_disk_h(0.5, 1.0, 0.5), 0.0);
  EXPECT_NEAR(exact_offcenter_disk_h(0.5, 1.0, 0.75), 0.58043062325516624, 1e-13);
  EXPECT_NEAR(exact_offcenter_disk_h(0.5, 1.0, 1.0), 0.74129186976549873, 1e-13);
  EXPECT_NEAR(exact_offcenter_disk_h(0.5, 1.0, 1.25), 0.84929581601514462, 1e-13);
  EXPECT_EQ(exact_offcenter_disk_h(0.5, 1.0, 1.5), 1.0);
  EXPECT_THROW(exact_offcenter_disk_h(1.0, 1.0, 1.0), InputError);
}

TEST(OffCenter, PoissonIntegralAgrees) {
  for (double a : {0.2, 0.5, 0.8}) {
    for (int i = 1; i < 10; ++i) {
      const double r = (1.0 - a) + 2.0 * a * i / 10.0;
      EXPECT_NEAR(exact_offcenter_disk_h(a, 1.0, r), poisson_offcenter(a, 1.0, r, 2000000), 2e-5);
    }
  }
}

TEST(OffCenter, RotationInvariant) {
  const Point a = std::polar(0.5, 2.0);
  EXPECT_NEAR(exact_offcenter_disk_h(a, 1.0, 1.1), exact_offcenter_disk_h(0.5, 1.0, 1.1), 1e-14);
}
