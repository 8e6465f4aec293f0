#include "hmdf/exact.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

namespace {
constexpr double kPi = std::numbers::pi;
}

double beurling_lower_bound(double mu, double r) {
  if (!(mu > 0.0) || !(r >= mu)) {
    throw InputError(fmt::format("beurling bound needs 0 < mu <= r (mu = {}, r = {})", mu, r));
  }
  if (r == mu) return 0.0;
  return 1.0 - (4.0 / kPi) * std::atan(std::sqrt(mu / r));
}

double exact_slit_disk_gate(double rk, double rk1, double M) {
  if (!(rk > 0.0 && rk <= rk1 && rk1 <= M)) {
    throw InputError(fmt::format("slit disk needs 0 < r_k <= r_k+1 <= M (got {}, {}, {})", rk, rk1, M));
  }
  const double num = (rk1 - rk) * (M * M - rk1 * rk);
  const double den = rk * (rk1 + M) * (rk1 + M);
  return (2.0 / kPi) * std::atan(std::sqrt(num / den));
}

double slit_disk_gate_via_map(double rk, double rk1, double M) {
  if (!(rk > 0.0 && rk <= rk1 && rk1 <= M)) {
    throw InputError(fmt::format("slit disk needs 0 < r_k <= r_k+1 <= M (got {}, {}, {})", rk, rk1, M));
  }
  const auto c = [M](double x) { return 1.0 / (x + M) - 1.0 / (2.0 * M); };
  const double half = 1.0 / (2.0 * M);
  const double t = std::sqrt(half * half - c(rk) * c(rk));
  const double rp = std::sqrt(c(rk) * c(rk) - c(rk1) * c(rk1));
  return (2.0 / kPi) * std::atan2(rp, t);
}

double exact_offcenter_disk_h(Point a, double R, double r) {
  const double m = std::abs(a);
  if (!(R > 0.0) || !(m < R)) {
    throw InputError(fmt::format("off-center disk needs |a| < R (|a| = {}, R = {})", m, R));
  }
  if (m == 0.0) return r >= R ? 1.0 : 0.0;
  const double c = (r * r - m * m - R * R) / (2.0 * R * m);
  if (c <= -1.0) return 0.0;
  if (c >= 1.0) return 1.0;
  // Boundary points a + R e^{it} with cos(t - arg a) <= c lie in the closed ball of radius r.
  const double t0 = std::acos(c);
  const double base = std::arg(a);
  const Point b = -a / R;
  const auto to_center = [b](double t) {
    const Point zeta = std::polar(1.0, t);
    return (zeta - b) / (1.0 - std::conj(b) * zeta);
  };
  const double start = std::arg(to_center(base + t0));
  const double stop = std::arg(to_center(base + 2.0 * kPi - t0));
  double sweep = stop - start;
  while (sweep < 0.0) sweep += 2.0 * kPi;
  while (sweep > 2.0 * kPi) sweep -= 2.0 * kPi;
  return sweep / (2.0 * kPi);
}

}  // namespace hmdf
