#pragma once

#include <optional>
#include <vector>

#include "hmdf/geometry.hpp"

namespace hmdf {

/// Value of an upper bound on a harmonic measure; values above 1 carry no information.
struct BoundValue {
  double value = 0.0;
  bool vacuous() const { return value > 1.0; }
};

/// (8/pi) exp(-pi * integral dx / theta(x)) for a channel of width theta(x) on [x0, b].
/// widths are samples at equally spaced x; the integral uses composite Simpson (trapezoid
/// on a final odd interval).
BoundValue channel_bound_straight(const std::vector<double>& widths, double x0, double b);

/// (16/pi) exp(-pi r0 (theta0 - b) / (2 (r1 - r0))).
BoundValue channel_bound_curved(double r0, double r1, double b, double theta0);

/// (2/pi) sqrt((r_{k+1} - r_k) / r_k) for a gate on the positive real axis.
BoundValue gate_axis_bound(double rk, double rk1);

/// Sum of (32/pi) exp(-pi r_k chi_k / (2 (r_{k+1} - r_k))) over gates with phi_k > 0 plus
/// gate_axis_bound over gates with phi_k = 0.
BoundValue hdiff_bound(const BlockedCircleDomain& d);

/// Lower bound on psi_k for an arc of harmonic measure beta at radius r_k in a circle domain of
/// radius M. Empty when r_k < M (1 - 1/e).
std::optional<double> arc_lower_bound(double beta, double rk, double M);

/// Parameters shared by the chi family: minimal secant slope alpha and the radii mu < M.
struct ChiParams {
  double alpha = 1.0;
  double mu = 1.0;
  double M = 2.0;
};

double chi1(double delta, const ChiParams& p);
/// chi_order(delta) = sum over q < order of chi_1(2^{-q} delta).
double chi_p(double delta, int order, const ChiParams& p);
double chi_inf(double delta, const ChiParams& p);

struct DerivBounds {
  /// Upper bound on M - r_k.
  double outer_gap = 0.0;
  /// Upper bound on eta_{j,k}.
  double depth = 0.0;
};

/// Part (i) from psi_k and part (ii) from r_k - r_j.
DerivBounds deriv_bounds(const ChiParams& p, double psi_k, double radial_gap);

struct Thresholds {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double g_residual = 0.0;

  double m0() const;
};

/// g(m) = (2/pi) m (2 log(1 + 1/m) + pi^2) + (4/pi) m log(256 / (pi alpha)).
double threshold_g(double m, double alpha);
Thresholds thresholds(double alpha, double beta);

/// kappa_n = ((M - mu) / (mu n)) log n.
double kappa(int n, double mu, double M);
/// n exp(-pi mu n kappa_n / (2 (M - mu))).
double kappa_condition2(int n, double mu, double M);

struct KappaRow {
  int n = 0;
  double kappa = 0.0;
  double condition2 = 0.0;
};

struct KappaReport {
  std::vector<KappaRow> rows;
  /// Index from which kappa_n is nonincreasing through n_max.
  int kappa_monotone_from = 0;
  /// Index from which the condition (2) sequence is nonincreasing through n_max.
  int condition2_monotone_from = 0;
  double kappa_at_max = 0.0;
  double condition2_at_max = 0.0;
  bool decaying = false;
};

/// Scans n = 1..n_max; rows holds a log-spaced sample.
KappaReport kappa_conditions_report(double mu, double M, int n_max);

}  // namespace hmdf
