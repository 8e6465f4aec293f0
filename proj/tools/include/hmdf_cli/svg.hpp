#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmdf/geometry.hpp"
#include "hmdf/hfunction.hpp"

namespace hmdf::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
  /// Optional symmetric error bars, one per point.
  std::vector<double> errors;
  bool markers = false;
};

/// Arcs, gates and the base point 0. Gates with chi = 0 draw nothing.
std::string render_domain(const CircleDomain& d, const std::string& title = {});
std::string render_domain(const BlockedCircleDomain& d, const std::string& title = {});

/// Line plot on [x0, x1] x [0, 1.05].
std::string render_plot(const std::vector<Series>& series, double x0, double x1, const std::string& title,
                        const std::string& xlabel, const std::string& ylabel);

/// f sampled finely with jumps drawn as vertical risers.
Series function_series(const CandidateH& f, const std::string& color, double x0, double x1);
Series step_series(const StepH& s, const std::string& color, double x0, double x1);

std::string render_function(const CandidateH& f, const std::string& title = {});
std::string render_step(const StepH& s, const std::string& title = {});

/// Closed curve r(theta) e^{i theta} from (theta, r) samples.
std::string render_profile(const std::vector<std::pair<double, double>>& profile, const std::string& title = {});

}  // namespace hmdf::cli
