#include <ostream>

#include <CLI11.hpp>

#include "hmdf/error.hpp"
#include "hmdf_cli/commands.hpp"
#include "hmdf_cli/io.hpp"

namespace hmdf::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic measure distribution functions of circle domains", "hmdf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hmdf 0.1.0");

  RunConfig cfg;
  std::string engine, n_list;
  long long samples = 0;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--engine", engine, "fd or wos")->envname("HMDF_ENGINE");
    sub->add_option("--samples", samples, "random walks per estimate")->envname("HMDF_SAMPLES");
    sub->add_option("--eps", cfg.eps, "absorption shell, relative to the outer radius")->envname("HMDF_EPS");
    sub->add_option("--seed", cfg.seed, "random seed")->envname("HMDF_SEED");
    sub->add_option("--resolution", cfg.resolution, "finite-difference angular resolution")
        ->envname("HMDF_RESOLUTION");
    sub->add_option("--tol", cfg.tol, "inversion tolerance")->envname("HMDF_TOL");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)")->envname("HMDF_THREADS");
    sub->add_option("--out", cfg.out, "output file or directory")->envname("HMDF_OUT");
  };

  std::string file, radii;
  CLI::App* compute = app.add_subcommand("compute", "tabulate h of a domain file");
  compute->add_option("domain", file, "domain JSON")->required();
  compute->add_option("--radii", radii, "a:b:count or comma list")->required()->envname("HMDF_RADII");
  common(compute);

  CLI::App* invert = app.add_subcommand("invert", "solve for the circle domain of a step function");
  invert->add_option("steps", file, "step-function JSON")->required();
  common(invert);

  CLI::App* construct = app.add_subcommand("construct", "run the construction pipeline on a candidate function");
  construct->add_option("function", file, "function JSON")->required();
  construct->add_option("--n", n_list, "comma-separated grid sizes")->envname("HMDF_N");
  common(construct);

  CLI::App* check = app.add_subcommand("check", "necessary conditions and jump-threshold verdict");
  check->add_option("function", file, "function JSON")->required();
  common(check);

  CLI::App* render = app.add_subcommand("render", "SVG of a domain, function or step file");
  render->add_option("file", file, "JSON document")->required();
  common(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kInputError);
  }

  try {
    if (!engine.empty()) cfg.engine = engine_from(engine);
    if (samples != 0) cfg.samples = samples;
    if (!n_list.empty()) cfg.n_list = parse_int_list(n_list);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (compute->parsed()) return cmd_compute(file, radii, cfg, out, err);
  if (invert->parsed()) return cmd_invert(file, cfg, out, err);
  if (construct->parsed()) return cmd_construct(file, cfg, out, err);
  if (check->parsed()) return cmd_check(file, cfg, out, err);
  return cmd_render(file, cfg, out, err);
}

}  // namespace hmdf::cli
