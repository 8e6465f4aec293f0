#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hmdf/construct.hpp"

namespace hmdf::cli {

enum ExitCode { kOk = 0, kInputError = 2, kEngineError = 3, kNoConvergence = 4 };

struct RunConfig {
  /// Empty: wos for compute, fd for invert and construct.
  std::optional<Engine> engine;
  /// Empty: 100000 for compute and invert, 200000 per domain for construct.
  std::optional<long long> samples;
  double eps = 1e-5;
  std::uint64_t seed = 1;
  int resolution = 512;
  double tol = 1e-3;
  std::vector<int> n_list{2, 4, 8};
  /// Output file (compute, invert, check, render) or directory (construct); empty writes to out.
  std::string out;
  int threads = 0;
};

/// Throws InputError on nonpositive numeric fields.
void validate(const RunConfig& cfg);

int cmd_compute(const std::string& domain_file, const std::string& radii_spec, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);
int cmd_invert(const std::string& step_file, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_construct(const std::string& function_file, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& function_file, const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_render(const std::string& file, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line, including HMDF_* environment overrides.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmdf::cli
