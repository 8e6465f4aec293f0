#include "hmdf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

namespace {

constexpr double kPi = std::numbers::pi;

double checked_delta(double delta, const ChiParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
    throw InputError(fmt::format("chi functions need alpha in (0, 1] (got {})", p.alpha));
  }
  if (!(p.mu > 0.0 && p.mu < p.M)) throw InputError("chi functions need 0 < mu < M");
  const double span = p.M - p.mu;
  if (!(delta >= 0.0) || delta > span * (1.0 + 1e-12)) {
    throw InputError(fmt::format("delta = {} outside [0, M - mu]", delta));
  }
  return std::min(delta, span);
}

}  // namespace

BoundValue channel_bound_straight(const std::vector<double>& widths, double x0, double b) {
  if (!(b >= x0)) throw InputError("channel needs x0 <= b");
  for (double w : widths) {
    if (!(w > 0.0)) throw InputError("channel width must be positive");
  }
  const std::size_t m = widths.size();
  if (b == x0) return {8.0 / kPi};
  if (m < 2) throw InputError("channel needs at least two width samples");
  const double h = (b - x0) / static_cast<double>(m - 1);
  const std::size_t intervals = m - 1;
  const std::size_t even = intervals - intervals % 2;
  double integral = 0.0;
  for (std::size_t i = 0; i < even; i += 2) {
    integral += h / 3.0 * (1.0 / widths[i] + 4.0 / widths[i + 1] + 1.0 / widths[i + 2]);
  }
  if (even < intervals) integral += 0.5 * h * (1.0 / widths[m - 2] + 1.0 / widths[m - 1]);
  return {8.0 / kPi * std::exp(-kPi * integral)};
}

BoundValue channel_bound_curved(double r0, double r1, double b, double theta0) {
  if (!(r0 > 0.0 && r0 < r1)) throw InputError("curved channel needs 0 < r0 < r1");
  if (!(b >= 0.0 && b <= theta0)) throw InputError("curved channel needs 0 <= b <= theta0");
  return {16.0 / kPi * std::exp(-kPi * r0 * (theta0 - b) / (2.0 * (r1 - r0)))};
}

BoundValue gate_axis_bound(double rk, double rk1) {
  if (!(rk > 0.0 && rk <= rk1)) throw InputError("axis gate needs 0 < r_k <= r_k+1");
  return {2.0 / kPi * std::sqrt((rk1 - rk) / rk)};
}

BoundValue hdiff_bound(const BlockedCircleDomain& d) {
  const int n = d.base.n();
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const double rk = d.base.radius(k);
    const double rk1 = d.base.radius(k + 1);
    if (d.gate_angles.at(k) > 0.0) {
      total += 32.0 / kPi * std::exp(-kPi * rk * d.chi(k) / (2.0 * (rk1 - rk)));
    } else {
      total += gate_axis_bound(rk, rk1).value;
    }
  }
  return {total};
}

std::optional<double> arc_lower_bound(double beta, double rk, double M) {
  if (!(rk > 0.0 && M > 0.0)) throw InputError("arc bound needs positive radii");
  if (rk > M) throw InputError(fmt::format("arc radius {} exceeds M = {}", rk, M));
  if (rk < M * (1.0 - 1.0 / std::numbers::e)) return std::nullopt;
  if (rk == M) return std::min(kPi / 2.0, kPi * beta);
  const double loss = 2.0 / kPi * ((M - rk) / rk) * (2.0 * std::log(M / (M - rk)) + kPi * kPi);
  return std::min(kPi / 2.0, kPi * beta - loss);
}

double chi1(double delta, const ChiParams& p) {
  delta = checked_delta(delta, p);
  if (delta == 0.0) return 0.0;
  return 2.0 / (kPi * p.mu) * delta * std::log(128.0 / (kPi * p.alpha) * (p.M - p.mu) / delta);
}

double chi_p(double delta, int order, const ChiParams& p) {
  if (order < 1) throw InputError("chi_p needs order >= 1");
  delta = checked_delta(delta, p);
  double total = 0.0;
  for (int q = 0; q < order; ++q) total += chi1(std::ldexp(delta, -q), p);
  return total;
}

double chi_inf(double delta, const ChiParams& p) {
  delta = checked_delta(delta, p);
  if (delta == 0.0) return 0.0;
  return 4.0 / (kPi * p.mu) * delta *
         (std::log((p.M - p.mu) / (p.alpha * delta)) + std::log(256.0 / kPi));
}

DerivBounds deriv_bounds(const ChiParams& p, double psi_k, double radial_gap) {
  if (!(p.alpha > 0.0)) throw InputError("derivative bounds need alpha > 0");
  DerivBounds out;
  out.outer_gap = (p.M - p.mu) / (p.alpha * kPi) * (kPi - psi_k);
  out.depth = chi_inf(radial_gap, p);
  return out;
}

double Thresholds::m0() const { return std::min({m1, m2, m3}); }

double threshold_g(double m, double alpha) {
  return 2.0 / kPi * m * (2.0 * std::log(1.0 + 1.0 / m) + kPi * kPi) +
         4.0 / kPi * m * std::log(256.0 / (kPi * alpha));
}

Thresholds thresholds(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError(fmt::format("alpha = {} outside (0, 1)", alpha));
  if (!(beta > 0.0 && beta < 1.0)) throw InputError(fmt::format("beta = {} outside (0, 1)", beta));
  Thresholds t;
  t.m1 = 1.0 / (std::numbers::e - 1.0);
  t.m2 = kPi * kPi / (8.0 * std::log(256.0 / (kPi * alpha)));
  const double target = kPi * beta;
  double lo = 1e-12;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (threshold_g(mid, alpha) < target ? lo : hi) = mid;
  }
  const double rlo = std::abs(threshold_g(lo, alpha) - target);
  const double rhi = std::abs(threshold_g(hi, alpha) - target);
  t.m3 = rlo <= rhi ? lo : hi;
  t.g_residual = std::min(rlo, rhi);
  return t;
}

double kappa(int n, double mu, double M) {
  if (n < 1) throw InputError("kappa needs n >= 1");
  return (M - mu) / (mu * n) * std::log(static_cast<double>(n));
}

double kappa_condition2(int n, double mu, double M) {
  return n * std::exp(-kPi * mu * n * kappa(n, mu, M) / (2.0 * (M - mu)));
}

KappaReport kappa_conditions_report(double mu, double M, int n_max) {
  if (n_max < 2) throw InputError("kappa report needs n_max >= 2");
  if (!(mu > 0.0 && mu < M)) throw InputError("kappa report needs 0 < mu < M");
  KappaReport rep;
  std::vector<double> k(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> c(static_cast<std::size_t>(n_max) + 1);
  for (int n = 1; n <= n_max; ++n) {
    k[n] = kappa(n, mu, M);
    c[n] = kappa_condition2(n, mu, M);
  }
  rep.kappa_monotone_from = n_max;
  while (rep.kappa_monotone_from > 1 && k[rep.kappa_monotone_from - 1] >= k[rep.kappa_monotone_from]) {
    --rep.kappa_monotone_from;
  }
  rep.condition2_monotone_from = n_max;
  while (rep.condition2_monotone_from > 1 && c[rep.condition2_monotone_from - 1] >= c[rep.condition2_monotone_from]) {
    --rep.condition2_monotone_from;
  }
  rep.kappa_at_max = k[n_max];
  rep.condition2_at_max = c[n_max];
  for (double x = 1.0; x <= n_max; x *= 1.25) {
    const int n = static_cast<int>(std::lround(x));
    if (rep.rows.empty() || rep.rows.back().n != n) rep.rows.push_back({n, k[n], c[n]});
  }
  if (rep.rows.back().n != n_max) rep.rows.push_back({n_max, k[n_max], c[n_max]});
  rep.decaying = rep.kappa_monotone_from <= n_max / 2 && rep.condition2_monotone_from <= n_max / 2 &&
                 rep.kappa_at_max < k[rep.kappa_monotone_from] &&
                 rep.condition2_at_max < c[rep.condition2_monotone_from];
  return rep;
}

}  // namespace hmdf
