#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmdf/bounds.hpp"
#include "hmdf/fd.hpp"
#include "hmdf/geometry.hpp"
#include "hmdf/hfunction.hpp"
#include "hmdf/potential.hpp"
#include "hmdf/wos.hpp"

namespace hmdf {

enum class Engine { fd, wos };

const char* to_string(Engine e);
Engine engine_from(const std::string& name);

struct SolveOptions {
  Engine engine = Engine::fd;
  double tol = 1e-3;
  int max_sweeps = 50;
  double angle_resolution = 1e-4 * 3.14159265358979323846;
  /// Initial psi_k = pi * jump_k * warm_scale, unless warm_start is given.
  double warm_scale = 1.0;
  std::vector<double> warm_start;
  FdOptions fd;
  WosOptions wos;
};

struct SolveResult {
  CircleDomain domain;
  /// |h_X(r_k) - v_k| for every jump radius.
  std::vector<double> residuals;
  int sweeps = 0;
  bool converged = false;
  /// Tolerance actually enforced (raised to 3 SE for the stochastic engine).
  double tol_used = 0.0;
  long long evaluations = 0;

  double max_residual() const;
};

/// Circle domain whose h-function jumps by the StepH increments at its radii.
SolveResult solve_circle_domain(const StepH& steps, const SolveOptions& opt);

/// chi_k = min(psi_k, psi_{k+1}, kappa), phi_k = min(psi_k, psi_{k+1}) - chi_k.
BlockedCircleDomain build_blocked(const CircleDomain& X, double kappa);

struct UlcRow {
  double eps = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  long long pairs_checked = 0;
  int theta_violations = 0;
  int eta_violations = 0;
  int radial_violations = 0;
};

struct UlcReport {
  std::vector<UlcRow> rows;
  /// max eta_{j,k} / chi_inf(r_k - r_j) over all pairs and domains.
  double max_eta_ratio = 0.0;
  /// max (M - r_k) / (((M - mu)/(alpha pi)) (pi - psi_k)).
  double max_outer_ratio = 0.0;
  int violations = 0;
  /// False when alpha = 0 leaves the derivative bounds undefined.
  bool applicable = true;
  std::vector<std::string> messages;

  bool pass() const { return applicable && violations == 0 && max_eta_ratio <= 1.0 && max_outer_ratio <= 1.0; }
};

struct UlcInput {
  int n = 0;
  CircleDomain X;
  BlockedCircleDomain omega;
};

/// Explicit delta_1, delta_2 from the derivative bounds and the kappa rule, checked on every
/// index pair of every domain. eps_grid defaults to 24 log-spaced values in [1e-4, pi].
UlcReport ulc_diagnostics(const std::vector<UlcInput>& domains, const ChiParams& p,
                          std::vector<double> eps_grid = {});

/// (theta, h^{-1}(|theta| / pi)) at n_theta angles spanning [-pi, pi].
std::vector<std::pair<double, double>> boundary_profile(const CandidateH& f, int n_theta);

struct PipelineOptions {
  std::vector<int> n_list{2, 4, 8};
  SolveOptions solve;
  /// Walk settings for h_X and h_Omega; the seed is mixed with n.
  WosOptions wos{200000, 1e-5, 10000, 1, 0, false};
  std::uint64_t seed = 1;
  int kappa_n_max = 1000000;
};

struct GapStat {
  double value = 0.0;
  double std_error = 0.0;
  double radius = 0.0;
};

struct PipelineEntry {
  int n = 0;
  StepH f_n;
  std::vector<double> grid;
  std::optional<SolveResult> solve;
  CircleDomain X;
  BlockedCircleDomain omega;
  double kappa = 0.0;
  int sigma = 0;
  BoundValue hdiff;
  HFunctionTable h_X;
  HFunctionTable h_omega;
  /// sup over grid radii of |h_X - h_Omega|.
  GapStat gap_X_omega;
  /// Radii where |h_X - h_Omega| exceeds hdiff + 3 SE.
  std::vector<double> hdiff_violations;
  /// sup over grid radii (jump radii of f excluded) of |h_Omega - f|.
  GapStat gap_f;
  /// min over tabulated r of h_Omega(r) - beurling(mu, r) + 3 SE.
  double beurling_margin = 0.0;
  bool symmetric = false;
  bool simply_connected = false;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct Verdict {
  std::string name;
  std::string status;
  std::string detail;
};

struct ConstructionReport {
  double mu = 0.0;
  double M = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<Thresholds> thresholds;
  KappaReport kappa;
  std::vector<PipelineEntry> entries;
  UlcReport ulc;
  std::vector<Verdict> verdicts;
  /// f-gap nonincreasing in n within 3 SE.
  bool gap_trend_ok = false;

  const Verdict* verdict(const std::string& name) const;
};

/// Verdict on whether (M - mu)/mu < min(m1, m2, m3) under alpha > 0 and beta > 0.
Verdict fjump_verdict(double mu, double M, double alpha, double beta);

ConstructionReport run_pipeline(const CandidateH& f, const PipelineOptions& opt);

}  // namespace hmdf
