#include "hmdf/construct.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"

namespace hmdf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPsiMax = kPi - 1e-9;

struct Evaluation {
  std::vector<double> arc;
  double std_error = 0.0;
};

using Evaluator = std::function<Evaluation(const CircleDomain&)>;

Evaluator make_evaluator(const StepH& steps, const SolveOptions& opt) {
  const int n = static_cast<int>(steps.radii.size()) - 1;
  if (opt.engine == Engine::fd) {
    FdOptions fo = opt.fd;
    fo.richardson = false;
    auto solver = std::make_shared<FdSolver>(steps.radii, fo);
    return [solver, n](const CircleDomain& X) {
      const FdSolution sol = solver->solve(X);
      Evaluation e;
      e.arc.assign(n + 1, 0.0);
      for (const FdDatum& d : sol.data) {
        if (d.feature.kind == FeatureKind::arc) e.arc[d.feature.index] += d.weight;
        if (d.feature.kind == FeatureKind::outer) e.arc[n] += d.weight;
      }
      return e;
    };
  }
  const WosOptions wo = opt.wos;
  return [wo, n](const CircleDomain& X) {
    const ExitEnsemble ens = wos_ensemble(X, wo);
    Evaluation e;
    e.arc.assign(n + 1, 0.0);
    const double total = static_cast<double>(std::max(1LL, ens.completed()));
    for (const ExitRecord& r : ens.exits) {
      if (r.capped) continue;
      const auto kind = static_cast<FeatureKind>(r.kind);
      if (kind == FeatureKind::arc) e.arc[r.index] += 1.0;
      if (kind == FeatureKind::outer) e.arc[n] += 1.0;
    }
    for (double& v : e.arc) v /= total;
    e.std_error = 0.5 / std::sqrt(total);
    return e;
  };
}

std::vector<double> cumulative_residuals(const Evaluation& e, const StepH& steps) {
  std::vector<double> out;
  double cum = 0.0;
  for (std::size_t k = 0; k < steps.values.size(); ++k) {
    cum += e.arc[k];
    out.push_back(std::abs(cum - steps.values[k]));
  }
  return out;
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

const char* to_string(Engine e) { return e == Engine::fd ? "fd" : "wos"; }

Engine engine_from(const std::string& name) {
  if (name == "fd") return Engine::fd;
  if (name == "wos") return Engine::wos;
  throw InputError(fmt::format("unknown engine '{}' (expected fd or wos)", name));
}

double SolveResult::max_residual() const { return sup(residuals); }

SolveResult solve_circle_domain(const StepH& steps, const SolveOptions& opt) {
  validate(steps);
  const int n = static_cast<int>(steps.radii.size()) - 1;
  if (n > 32) throw InputError(fmt::format("inversion supports at most 32 inner arcs (got {})", n));
  if (!(opt.tol > 0.0)) throw InputError("inversion tolerance must be positive");
  const std::vector<double> target = steps.jumps();

  std::vector<double> psi(n + 1, kPi);
  if (!opt.warm_start.empty()) {
    if (static_cast<int>(opt.warm_start.size()) < n) throw InputError("warm start is shorter than the arc count");
    for (int k = 0; k < n; ++k) psi[k] = std::clamp(opt.warm_start[k], 0.0, kPsiMax);
  } else {
    for (int k = 0; k < n; ++k) psi[k] = std::clamp(kPi * target[k] * opt.warm_scale, 0.0, 0.95 * kPi);
  }

  SolveResult res;
  const Evaluator eval = make_evaluator(steps, opt);
  const auto domain = [&](const std::vector<double>& p) { return CircleDomain::from(steps.radii, p); };
  Evaluation current = eval(domain(psi));
  ++res.evaluations;
  res.tol_used = opt.engine == Engine::wos ? std::max(opt.tol, 3.0 * current.std_error) : opt.tol;

  const bool stochastic = opt.engine == Engine::wos;
  const double coord_tol = stochastic ? res.tol_used / (2.0 * (n + 1)) : std::min(1e-7, 0.01 * opt.tol / (n + 1));
  const double coord_width = stochastic ? opt.angle_resolution : 1e-10;

  for (int sweep = 1; sweep <= opt.max_sweeps && n > 0; ++sweep) {
    double max_change = 0.0;
    for (int k = 0; k < n; ++k) {
      const double start = psi[k];
      double F0 = current.arc[k] - target[k];
      if (std::abs(F0) <= coord_tol) continue;

      double best_x = start;
      double best_F = F0;
      Evaluation best_eval = current;
      const auto F = [&](double x) {
        std::vector<double> trial = psi;
        trial[k] = x;
        Evaluation e = eval(domain(trial));
        ++res.evaluations;
        const double v = e.arc[k] - target[k];
        if (std::abs(v) < std::abs(best_F)) {
          best_F = v;
          best_x = x;
          best_eval = std::move(e);
        }
        return v;
      };

      double a = 0.0, Fa = -target[k];
      double b = kPsiMax, Fb = 0.0;
      bool bracketed = false;
      double step = 0.02;
      if (F0 < 0.0) {
        a = start;
        Fa = F0;
        while (!bracketed) {
          const double x = std::min(kPsiMax, a + step);
          const double v = F(x);
          if (v >= 0.0) {
            b = x;
            Fb = v;
            bracketed = true;
          } else {
            a = x;
            Fa = v;
            if (x >= kPsiMax) break;
          }
          step *= 3.0;
        }
      } else {
        b = start;
        Fb = F0;
        while (!bracketed) {
          const double x = std::max(0.0, b - step);
          const double v = x == 0.0 ? -target[k] : F(x);
          if (v <= 0.0) {
            a = x;
            Fa = v;
            bracketed = true;
          } else {
            b = x;
            Fb = v;
          }
          step *= 3.0;
        }
      }

      if (bracketed) {
        int side = 0;
        for (int it = 0; it < 80 && std::abs(best_F) > coord_tol && b - a > coord_width; ++it) {
          double x = (a * Fb - b * Fa) / (Fb - Fa);
          if (!(x > a && x < b) || !std::isfinite(x)) x = 0.5 * (a + b);
          if (stochastic && it % 2 == 1) x = 0.5 * (a + b);
          const double v = F(x);
          if (v < 0.0) {
            a = x;
            Fa = v;
            if (side == -1) Fb *= 0.5;
            side = -1;
          } else {
            b = x;
            Fb = v;
            if (side == 1) Fa *= 0.5;
            side = 1;
          }
        }
      }
      psi[k] = best_x;
      current = std::move(best_eval);
      max_change = std::max(max_change, std::abs(psi[k] - start));
    }
    res.sweeps = sweep;
    res.residuals = cumulative_residuals(current, steps);
    if (sup(res.residuals) <= res.tol_used && max_change <= opt.angle_resolution) {
      res.converged = true;
      break;
    }
  }
  if (n == 0) {
    res.residuals = cumulative_residuals(current, steps);
    res.converged = sup(res.residuals) <= res.tol_used;
  }
  res.domain = domain(psi);
  return res;
}

BlockedCircleDomain build_blocked(const CircleDomain& X, double kappa) {
  if (!(kappa >= 0.0)) throw InputError("inset angle kappa must be nonnegative");
  const Diagnostics diag = validate(X);
  if (!diag.ok()) throw InputError("invalid circle domain: " + diag.violations.front());
  BlockedCircleDomain out{X, {}};
  for (int k = 0; k < X.n(); ++k) {
    const double shorter = std::min(X.psi(k), X.psi(k + 1));
    const double chi = std::min(shorter, kappa);
    out.gate_angles.push_back(chi == shorter ? 0.0 : shorter - chi);
  }
  return out;
}

UlcReport ulc_diagnostics(const std::vector<UlcInput>& domains, const ChiParams& p, std::vector<double> eps_grid) {
  UlcReport rep;
  if (!(p.alpha > 0.0)) {
    rep.applicable = false;
    rep.messages.push_back("alpha = 0: derivative bounds undefined");
    return rep;
  }
  if (eps_grid.empty()) {
    for (int i = 0; i < 24; ++i) eps_grid.push_back(1e-4 * std::pow(kPi / 1e-4, i / 23.0));
  }
  const double span = p.M - p.mu;

  for (const UlcInput& in : domains) {
    const CircleDomain& X = in.X;
    const int n = X.n();
    for (int k = 0; k <= n; ++k) {
      const double bound = deriv_bounds(p, X.psi(k), 0.0).outer_gap;
      const double gap = p.M - X.radius(k);
      if (gap > 0.0) rep.max_outer_ratio = std::max(rep.max_outer_ratio, bound > 0.0 ? gap / bound : INFINITY);
      for (int j = 0; j < k; ++j) {
        const double depth = eta(X, j, k);
        if (depth <= 0.0) continue;
        const double delta = std::min(X.radius(k) - X.radius(j), span);
        const double b = chi_inf(delta, p);
        rep.max_eta_ratio = std::max(rep.max_eta_ratio, b > 0.0 ? depth / b : INFINITY);
      }
    }
  }
  if (rep.max_eta_ratio > 1.0) {
    rep.messages.push_back(fmt::format("eta exceeds chi_inf by a factor {:.6g}", rep.max_eta_ratio));
  }
  if (rep.max_outer_ratio > 1.0) {
    rep.messages.push_back(fmt::format("M - r_k exceeds its derivative bound by a factor {:.6g}", rep.max_outer_ratio));
  }

  for (double eps : eps_grid) {
    UlcRow row;
    row.eps = eps;
    row.delta2 = p.alpha * kPi * eps / span;
    // delta_1'(eps/2): largest delta with chi_inf(delta) < eps/2 (chi_inf is increasing).
    double d1p;
    if (chi_inf(span, p) < 0.5 * eps) {
      d1p = INFINITY;
    } else {
      double lo = 0.0, hi = span;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (chi_inf(mid, p) < 0.5 * eps ? lo : hi) = mid;
      }
      d1p = lo;
    }
    // N_kappa: smallest N with kappa_m < eps/2 for every m > N (kappa_m decreases from m = 3).
    int N = 0;
    const auto sup_after = [&](int N0) {
      double s = 0.0;
      for (int m = N0 + 1; m <= std::max(N0 + 1, 3); ++m) s = std::max(s, kappa(m, p.mu, p.M));
      return s;
    };
    while (sup_after(N) >= 0.5 * eps) ++N;
    row.delta1 = std::min(d1p, N > 0 ? span / N : INFINITY);

    for (const UlcInput& in : domains) {
      const CircleDomain& X = in.X;
      const int n = X.n();
      for (int k = 0; k <= n; ++k) {
        if (kPi - X.psi(k) < row.delta2 && !(p.M - X.radius(k) < eps)) {
          ++row.radial_violations;
          rep.messages.push_back(fmt::format("n = {}, eps = {:.4g}: arc {} nearly full but M - r_k = {:.6g}", in.n,
                                             eps, k, p.M - X.radius(k)));
        }
        for (int j = 0; j < k; ++j) {
          ++row.pairs_checked;
          const double gap = X.radius(k) - X.radius(j);
          if (gap < d1p && !(eta(X, j, k) < 0.5 * eps)) {
            ++row.eta_violations;
            rep.messages.push_back(fmt::format("n = {}, eps = {:.4g}: eta({}, {}) = {:.6g}", in.n, eps, j, k,
                                               eta(X, j, k)));
          }
          if (gap < row.delta1 && !(theta(in.omega, j, k) < eps)) {
            ++row.theta_violations;
            rep.messages.push_back(fmt::format("n = {}, eps = {:.4g}: theta({}, {}) = {:.6g}", in.n, eps, j, k,
                                               theta(in.omega, j, k)));
          }
        }
      }
    }
    rep.violations += row.theta_violations + row.eta_violations + row.radial_violations;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<std::pair<double, double>> boundary_profile(const CandidateH& f, int n_theta) {
  if (n_theta < 2) throw InputError("profile needs at least two angles");
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n_theta; ++i) {
    const double th = -kPi + 2.0 * kPi * i / (n_theta - 1);
    out.emplace_back(th, inverse(f, std::min(1.0, std::abs(th) / kPi)));
  }
  return out;
}

const Verdict* ConstructionReport::verdict(const std::string& name) const {
  for (const Verdict& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

Verdict fjump_verdict(double mu, double M, double alpha, double beta) {
  Verdict v{"fjump", "FAIL", ""};
  const double ratio = (M - mu) / mu;
  if (!(beta > 0.0)) {
    v.detail = "hypothesis beta>0 violated";
    return v;
  }
  if (!(alpha > 0.0)) {
    v.detail = "hypothesis alpha>0 violated";
    return v;
  }
  if (!(alpha < 1.0 && beta < 1.0)) {
    v.detail = fmt::format("thresholds need alpha, beta < 1 (alpha = {:.6g}, beta = {:.6g})", alpha, beta);
    return v;
  }
  const Thresholds t = thresholds(alpha, beta);
  const double margin = t.m0() - ratio;
  v.status = margin > 0.0 ? "PASS" : "FAIL";
  v.detail = fmt::format("(M-mu)/mu = {:.6g} {} min(m1, m2, m3) = {:.6g}; margin {:.6g}", ratio,
                         margin > 0.0 ? "<" : ">=", t.m0(), margin);
  return v;
}

ConstructionReport run_pipeline(const CandidateH& f, const PipelineOptions& opt) {
  ConstructionReport rep;
  rep.mu = f.mu();
  rep.M = f.M();
  rep.alpha = minimal_secant_slope(f);
  rep.beta = jump_at_mu(f);
  if (rep.alpha > 0.0 && rep.alpha < 1.0 && rep.beta > 0.0 && rep.beta < 1.0) {
    rep.thresholds = thresholds(rep.alpha, rep.beta);
  }
  rep.kappa = kappa_conditions_report(rep.mu, rep.M, std::max(2, opt.kappa_n_max));
  const std::vector<double> f_jumps = f.jump_radii();

  std::vector<UlcInput> ulc_inputs;
  for (int n : opt.n_list) {
    PipelineEntry e;
    e.n = n;
    try {
      e.f_n = step_approximation(f, n);
      e.grid = step_grid(f, n);
      SolveResult sr = solve_circle_domain(e.f_n, opt.solve);
      std::vector<double> psi;
      for (double r : e.grid) {
        const auto it = std::find(e.f_n.radii.begin(), e.f_n.radii.end(), r);
        psi.push_back(it == e.f_n.radii.end() ? 0.0 : sr.domain.psi(static_cast<int>(it - e.f_n.radii.begin())));
      }
      e.X = CircleDomain::from(e.grid, psi);
      e.solve = std::move(sr);
      e.kappa = kappa(n, rep.mu, rep.M);
      for (int k = 0; k < e.X.n(); ++k) e.sigma += e.X.psi(k) <= e.kappa ? 1 : 0;
      e.omega = build_blocked(e.X, e.kappa);
      const Diagnostics diag = validate(e.omega);
      e.symmetric = diag.symmetric;
      e.simply_connected = diag.simply_connected;
      e.hdiff = hdiff_bound(e.omega);

      WosOptions wo = opt.wos;
      wo.seed = walk_seed(opt.seed, static_cast<std::uint64_t>(n));
      e.h_X = estimate_h(e.X, e.grid, wo);
      e.h_omega = estimate_h(e.omega, e.grid, wo);

      e.beurling_margin = INFINITY;
      for (std::size_t i = 0; i < e.grid.size(); ++i) {
        const double r = e.grid[i];
        const MeasureEstimate& hx = e.h_X.estimates[i];
        const MeasureEstimate& ho = e.h_omega.estimates[i];
        const double diff = std::abs(hx.value - ho.value);
        const double se = std::hypot(hx.std_error, ho.std_error);
        if (diff > e.gap_X_omega.value) e.gap_X_omega = {diff, se, r};
        if (diff > e.hdiff.value + 3.0 * se) e.hdiff_violations.push_back(r);
        if (std::find(f_jumps.begin(), f_jumps.end(), r) == f_jumps.end()) {
          const double gf = std::abs(ho.value - f(r));
          if (gf > e.gap_f.value) e.gap_f = {gf, ho.std_error, r};
        }
        e.beurling_margin =
            std::min(e.beurling_margin, ho.value - beurling_lower_bound(rep.mu, r) + 3.0 * ho.std_error);
      }
      ulc_inputs.push_back({n, e.X, e.omega});
    } catch (const Error& err) {
      e.error = err.what();
    }
    rep.entries.push_back(std::move(e));
  }

  rep.ulc = ulc_diagnostics(ulc_inputs, {rep.alpha, rep.mu, rep.M});

  auto add = [&rep](std::string name, bool ok, std::string detail) {
    rep.verdicts.push_back({std::move(name), ok ? "PASS" : "FAIL", std::move(detail)});
  };
  add("condition1_kappa", rep.kappa.decaying,
      fmt::format("kappa_n nonincreasing from n = {}; kappa at n = {} is {:.6g}", rep.kappa.kappa_monotone_from,
                  rep.kappa.rows.back().n, rep.kappa.kappa_at_max));
  add("condition2_gate_decay", rep.kappa.decaying,
      fmt::format("n exp(-pi mu n kappa_n / (2 (M - mu))) nonincreasing from n = {}; value {:.6g} at n = {}",
                  rep.kappa.condition2_monotone_from, rep.kappa.condition2_at_max, rep.kappa.rows.back().n));
  add("condition3_alpha", rep.alpha > 0.0, fmt::format("alpha = {:.6g}", rep.alpha));

  std::vector<double> ratios;
  std::string trend;
  for (const PipelineEntry& e : rep.entries) {
    if (!e.ok()) continue;
    ratios.push_back(e.sigma / std::sqrt(static_cast<double>(e.n)));
    trend += fmt::format("{}n={}: {:.4g}", trend.empty() ? "" : ", ", e.n, ratios.back());
  }
  bool sigma_ok = !ratios.empty();
  for (std::size_t i = 1; i < ratios.size(); ++i) sigma_ok = sigma_ok && ratios[i] <= ratios[i - 1];
  rep.verdicts.push_back({"condition4_sigma_trend", sigma_ok ? "TREND PASS" : "TREND FAIL",
                          "sigma_n / sqrt(n) over the supplied n: " + trend});

  rep.verdicts.push_back(fjump_verdict(rep.mu, rep.M, rep.alpha, rep.beta));

  add("ulc", rep.ulc.pass(),
      rep.ulc.applicable
          ? fmt::format("{} violations; max eta/chi_inf = {:.4g}; max outer ratio = {:.4g}", rep.ulc.violations,
                        rep.ulc.max_eta_ratio, rep.ulc.max_outer_ratio)
          : rep.ulc.messages.front());

  bool sound = true, beur = true, failed = false, shape = true;
  for (const PipelineEntry& e : rep.entries) {
    if (!e.ok()) {
      failed = true;
      continue;
    }
    sound = sound && e.hdiff_violations.empty();
    beur = beur && e.beurling_margin >= 0.0;
    shape = shape && e.symmetric && e.simply_connected;
  }
  add("gate_gap_soundness", sound && !failed, "|h_X - h_Omega| <= hdiff_bound + 3 SE at every grid radius");
  add("beurling", beur && !failed, "h_Omega >= Beurling bound - 3 SE at every grid radius");
  add("symmetric_simply_connected", shape && !failed, "every Omega_n validates");

  rep.gap_trend_ok = !failed;
  std::string gaps;
  const PipelineEntry* prev = nullptr;
  for (const PipelineEntry& e : rep.entries) {
    if (!e.ok()) continue;
    gaps += fmt::format("{}n={}: {:.4g}", gaps.empty() ? "" : ", ", e.n, e.gap_f.value);
    if (prev) {
      const double slack = 3.0 * std::hypot(e.gap_f.std_error, prev->gap_f.std_error);
      rep.gap_trend_ok = rep.gap_trend_ok && e.gap_f.value <= prev->gap_f.value + slack;
    }
    prev = &e;
  }
  add("gap_trend", rep.gap_trend_ok, "sup |h_Omega - f| at continuity points: " + gaps);
  if (failed) add("per_n_failures", false, "at least one n failed; see entries");
  return rep;
}

}  // namespace hmdf
