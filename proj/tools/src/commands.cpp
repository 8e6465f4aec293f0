#include "hmdf_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

#include <fmt/format.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"
#include "hmdf/fd.hpp"
#include "hmdf_cli/io.hpp"
#include "hmdf_cli/svg.hpp"

namespace hmdf::cli {

namespace {

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEngineError;
  }
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text(cfg.out, text);
  }
}

WosOptions wos_options(const RunConfig& cfg, long long default_samples) {
  WosOptions w;
  w.samples = cfg.samples.value_or(default_samples);
  w.eps_rel = cfg.eps;
  w.seed = cfg.seed;
  w.threads = cfg.threads;
  return w;
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions o;
  o.engine = cfg.engine.value_or(Engine::fd);
  o.tol = cfg.tol;
  o.fd.resolution = cfg.resolution;
  o.wos = wos_options(cfg, 100000);
  return o;
}

Json gap_json(const GapStat& g) {
  Json j;
  j["value"] = g.value;
  j["std_error"] = g.std_error;
  j["radius"] = g.radius;
  return j;
}

std::string h_overlay_csv(const PipelineEntry& e, const CandidateH& f) {
  std::string s = "r,h_X,std_error_X,h_Omega,std_error_Omega,f\n";
  for (std::size_t i = 0; i < e.grid.size(); ++i) {
    const MeasureEstimate& x = e.h_X.estimates[i];
    const MeasureEstimate& o = e.h_omega.estimates[i];
    s += fmt::format("{},{},{},{},{},{}\n", format_double(e.grid[i]), format_double(x.value),
                     format_double(x.std_error), format_double(o.value), format_double(o.std_error),
                     format_double(f(e.grid[i])));
  }
  return s;
}

std::string h_overlay_svg(const PipelineEntry& e, const CandidateH& f) {
  const double pad = 0.1 * (f.M() - f.mu());
  const double x0 = std::max(0.0, f.mu() - pad);
  const double x1 = f.M() + pad;
  Series sx{"h_X", "#d62728", {}, {}, true};
  Series so{"h_Omega", "#1f77b4", {}, {}, true};
  for (std::size_t i = 0; i < e.grid.size(); ++i) {
    sx.points.emplace_back(e.grid[i], e.h_X.estimates[i].value);
    sx.errors.push_back(3.0 * e.h_X.estimates[i].std_error);
    so.points.emplace_back(e.grid[i], e.h_omega.estimates[i].value);
    so.errors.push_back(3.0 * e.h_omega.estimates[i].std_error);
  }
  return render_plot({function_series(f, "black", x0, x1), sx, so}, x0, x1, fmt::format("n = {}", e.n), "r",
                     "h(r)");
}

Json report_json(const ConstructionReport& rep, const PipelineOptions& opt) {
  Json j;
  j["mu"] = rep.mu;
  j["M"] = rep.M;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  j["ratio"] = (rep.M - rep.mu) / rep.mu;
  if (rep.thresholds) {
    j["thresholds"] = {{"m1", rep.thresholds->m1},
                       {"m2", rep.thresholds->m2},
                       {"m3", rep.thresholds->m3},
                       {"m0", rep.thresholds->m0()}};
  }
  Json verdicts = Json::array();
  for (const Verdict& v : rep.verdicts) verdicts.push_back({{"name", v.name}, {"status", v.status}, {"detail", v.detail}});
  j["verdicts"] = verdicts;

  Json kappa = Json::array();
  for (const KappaRow& r : rep.kappa.rows) kappa.push_back({{"n", r.n}, {"kappa", r.kappa}, {"condition2", r.condition2}});
  j["kappa"] = {{"rows", kappa},
                {"kappa_monotone_from", rep.kappa.kappa_monotone_from},
                {"condition2_monotone_from", rep.kappa.condition2_monotone_from},
                {"decaying", rep.kappa.decaying}};

  Json entries = Json::array();
  for (const PipelineEntry& e : rep.entries) {
    Json x;
    x["n"] = e.n;
    if (!e.ok()) {
      x["error"] = e.error;
      entries.push_back(x);
      continue;
    }
    x["kappa"] = e.kappa;
    x["sigma"] = e.sigma;
    x["radii"] = e.X.radii();
    x["psi"] = e.X.psis();
    x["phi"] = e.omega.gate_angles;
    if (e.solve) {
      x["solve"] = {{"converged", e.solve->converged},
                    {"sweeps", e.solve->sweeps},
                    {"evaluations", e.solve->evaluations},
                    {"max_residual", e.solve->max_residual()},
                    {"tol_used", e.solve->tol_used}};
    }
    x["hdiff_bound"] = e.hdiff.value;
    x["hdiff_vacuous"] = e.hdiff.vacuous();
    x["gap_X_Omega"] = gap_json(e.gap_X_omega);
    x["hdiff_violations"] = e.hdiff_violations;
    x["gap_f"] = gap_json(e.gap_f);
    x["beurling_margin"] = e.beurling_margin;
    x["symmetric"] = e.symmetric;
    x["simply_connected"] = e.simply_connected;
    entries.push_back(x);
  }
  j["entries"] = entries;

  Json rows = Json::array();
  for (const UlcRow& r : rep.ulc.rows) {
    rows.push_back({{"eps", r.eps},
                    {"delta1", r.delta1},
                    {"delta2", r.delta2},
                    {"pairs_checked", r.pairs_checked},
                    {"theta_violations", r.theta_violations},
                    {"eta_violations", r.eta_violations},
                    {"radial_violations", r.radial_violations}});
  }
  j["ulc"] = {{"applicable", rep.ulc.applicable},
              {"violations", rep.ulc.violations},
              {"max_eta_ratio", rep.ulc.max_eta_ratio},
              {"max_outer_ratio", rep.ulc.max_outer_ratio},
              {"messages", rep.ulc.messages},
              {"rows", rows}};
  j["config"] = {{"n_list", opt.n_list},
                 {"engine", to_string(opt.solve.engine)},
                 {"tol", opt.solve.tol},
                 {"resolution", opt.solve.fd.resolution},
                 {"samples", opt.wos.samples},
                 {"eps", opt.wos.eps_rel},
                 {"seed", opt.seed}};
  return j;
}

std::string row(const std::string& name, const std::string& value) { return fmt::format("{:<22}{}\n", name, value); }

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.samples && *cfg.samples < 1) throw InputError("samples must be positive");
  if (!(cfg.eps > 0.0 && cfg.eps < 1.0)) throw InputError("eps must lie in (0, 1)");
  if (cfg.resolution < 8) throw InputError("resolution must be at least 8");
  if (!(cfg.tol > 0.0)) throw InputError("tol must be positive");
  if (cfg.threads < 0) throw InputError("threads must be nonnegative");
  if (cfg.n_list.empty()) throw InputError("n list is empty");
  for (int n : cfg.n_list) {
    if (n < 1) throw InputError("n must be positive");
  }
}

int cmd_compute(const std::string& domain_file, const std::string& radii_spec, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const Document doc = read_document(domain_file);
    const std::vector<double> radii = parse_radii(radii_spec);
    const Engine engine = cfg.engine.value_or(Engine::wos);
    FdOptions fo;
    fo.resolution = cfg.resolution;
    const WosOptions wo = wos_options(cfg, 100000);

    HFunctionTable table;
    if (const auto* X = std::get_if<CircleDomain>(&doc)) {
      table = engine == Engine::fd ? fd_estimate_h(*X, radii, fo) : estimate_h(*X, radii, wo);
    } else if (const auto* O = std::get_if<BlockedCircleDomain>(&doc)) {
      table = engine == Engine::fd ? fd_estimate_h(*O, radii, fo) : estimate_h(*O, radii, wo);
    } else {
      throw InputError(fmt::format("'{}' is not a domain file", domain_file));
    }
    if (engine == Engine::fd) {
      for (MeasureEstimate& e : table.estimates) e.std_error = e.grid_error;
    }
    std::ostringstream csv;
    write_h_csv(csv, table);
    emit(csv.str(), cfg, out);

    const MeasureEstimate& first = table.estimates.front();
    err << fmt::format("{} radii, engine {}, {}\n", radii.size(), to_string(engine),
                       engine == Engine::fd
                           ? fmt::format("resolution {} and {}", cfg.resolution, first.grid_resolution)
                           : fmt::format("{} walks, {} discarded", first.sample_count, first.discard_count));
    return static_cast<int>(kOk);
  });
}

int cmd_invert(const std::string& step_file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const Document doc = read_document(step_file);
    const auto* steps = std::get_if<StepH>(&doc);
    if (!steps) throw InputError(fmt::format("'{}' is not a step-function file", step_file));
    const SolveOptions opt = solve_options(cfg);
    const SolveResult res = solve_circle_domain(*steps, opt);

    Json j = to_json(res.domain);
    j["metadata"] = {{"engine", to_string(opt.engine)},
                     {"tol", opt.tol},
                     {"tol_used", res.tol_used},
                     {"converged", res.converged},
                     {"sweeps", res.sweeps},
                     {"evaluations", res.evaluations},
                     {"residuals", res.residuals},
                     {"targets", steps->values}};
    emit(j.dump(2) + "\n", cfg, out);
    err << fmt::format("{} after {} sweeps; max residual {:.3g} (tol {:.3g})\n",
                       res.converged ? "converged" : "NOT converged", res.sweeps, res.max_residual(), res.tol_used);
    return static_cast<int>(res.converged ? kOk : kNoConvergence);
  });
}

int cmd_construct(const std::string& function_file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const Document doc = read_document(function_file);
    const auto* f = std::get_if<CandidateH>(&doc);
    if (!f) throw InputError(fmt::format("'{}' is not a function file", function_file));

    PipelineOptions opt;
    opt.n_list = cfg.n_list;
    opt.solve = solve_options(cfg);
    opt.wos = wos_options(cfg, 200000);
    opt.seed = cfg.seed;
    const ConstructionReport rep = run_pipeline(*f, opt);

    const std::filesystem::path dir = cfg.out.empty() ? "hmdf_report" : cfg.out;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

    write_text((dir / "report.json").string(), report_json(rep, opt).dump(2) + "\n");
    for (const PipelineEntry& e : rep.entries) {
      if (!e.ok()) continue;
      const std::string tag = fmt::format("n{}", e.n);
      write_text((dir / ("h_" + tag + ".csv")).string(), h_overlay_csv(e, *f));
      write_text((dir / ("X_" + tag + ".json")).string(), to_json(e.X).dump(2) + "\n");
      write_text((dir / ("Omega_" + tag + ".json")).string(), to_json(e.omega).dump(2) + "\n");
      write_text((dir / ("X_" + tag + ".svg")).string(), render_domain(e.X, fmt::format("X_{}", e.n)));
      write_text((dir / ("Omega_" + tag + ".svg")).string(), render_domain(e.omega, fmt::format("Omega_{}", e.n)));
      write_text((dir / ("h_" + tag + ".svg")).string(), h_overlay_svg(e, *f));
    }
    try {
      write_text((dir / "profile.svg").string(), render_profile(boundary_profile(*f, 721), "boundary modulus profile"));
    } catch (const InputError& e) {
      err << "profile skipped: " << e.what() << '\n';
    }

    for (const PipelineEntry& e : rep.entries) {
      if (e.ok()) {
        out << fmt::format("n={:<4} sigma={:<3} kappa={:<10.4g} hdiff={:<10.4g} gap_X_Omega={:<10.4g} gap_f={:<10.4g}\n",
                           e.n, e.sigma, e.kappa, e.hdiff.value, e.gap_X_omega.value, e.gap_f.value);
      } else {
        out << fmt::format("n={:<4} FAILED: {}\n", e.n, e.error);
      }
    }
    for (const Verdict& v : rep.verdicts) out << fmt::format("{:<28}{:<12}{}\n", v.name, v.status, v.detail);
    out << "report written to " << dir.string() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_check(const std::string& function_file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = read_document(function_file);
    const auto* f = std::get_if<CandidateH>(&doc);
    if (!f) throw InputError(fmt::format("'{}' is not a function file", function_file));

    const NecessaryReport nec = necessary_checks(*f);
    const double alpha = minimal_secant_slope(*f);
    const double beta = jump_at_mu(*f);
    const double ratio = (f->M() - f->mu()) / f->mu();
    const Verdict fj = fjump_verdict(f->mu(), f->M(), alpha, beta);
    const bool pass = nec.pass() && fj.status == "PASS";

    std::string s;
    s += row("mu", format_double(f->mu()));
    s += row("M", format_double(f->M()));
    s += row("alpha", format_double(alpha));
    s += row("beta", format_double(beta));
    s += row("(M-mu)/mu", format_double(ratio));
    Json j;
    j["mu"] = f->mu();
    j["M"] = f->M();
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["ratio"] = ratio;
    if (alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
      const Thresholds t = thresholds(alpha, beta);
      s += row("m1", format_double(t.m1));
      s += row("m2", format_double(t.m2));
      s += row("m3", format_double(t.m3));
      s += row("m0", format_double(t.m0()));
      s += row("margin", format_double(t.m0() - ratio));
      j["thresholds"] = {{"m1", t.m1}, {"m2", t.m2}, {"m3", t.m3}, {"m0", t.m0()}};
      j["margin"] = t.m0() - ratio;
    }
    s += row("necessary", nec.pass() ? "PASS" : "FAIL");
    for (const std::string& m : nec.messages) s += row("", m);
    if (nec.first_violation) s += row("first violation r", format_double(*nec.first_violation));
    s += row("fjump", fj.status + " " + fj.detail);
    s += row("verdict", pass ? "PASS" : "FAIL");
    out << s;

    j["necessary"] = {{"pass", nec.pass()},
                      {"right_continuous", nec.right_continuous},
                      {"monotone", nec.monotone},
                      {"range_ok", nec.range_ok},
                      {"positive_inside", nec.positive_inside},
                      {"beurling_ok", nec.beurling_ok},
                      {"messages", nec.messages}};
    if (nec.first_violation) j["necessary"]["first_violation"] = *nec.first_violation;
    j["fjump"] = {{"status", fj.status}, {"detail", fj.detail}};
    j["verdict"] = pass ? "PASS" : "FAIL";
    if (!cfg.out.empty()) write_text(cfg.out, j.dump(2) + "\n");
    return static_cast<int>(kOk);
  });
}

int cmd_render(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = read_document(file);
    const std::string title = std::filesystem::path(file).stem().string();
    std::string svg;
    if (const auto* X = std::get_if<CircleDomain>(&doc)) svg = render_domain(*X, title);
    if (const auto* O = std::get_if<BlockedCircleDomain>(&doc)) svg = render_domain(*O, title);
    if (const auto* f = std::get_if<CandidateH>(&doc)) svg = render_function(*f, title);
    if (const auto* s = std::get_if<StepH>(&doc)) svg = render_step(*s, title);
    emit(svg, cfg, out);
    return static_cast<int>(kOk);
  });
}

}  // namespace hmdf::cli
