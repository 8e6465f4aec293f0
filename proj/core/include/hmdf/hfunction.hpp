#pragma once

#include <optional>
#include <string>
#include <vector>

namespace hmdf {

enum class SegmentKind { constant, linear };

/// Right-continuous nondecreasing candidate h-function, piecewise constant/linear on [mu, M].
///
/// f = 0 below breakpoints[0] = mu and f = values.back() from breakpoints.back() = M on.
/// On [b_i, b_{i+1}) a constant segment holds values[i]; a linear segment runs from values[i]
/// to end_values[i] (default values[i+1]) as r approaches b_{i+1}.
class CandidateH {
 public:
  CandidateH(std::vector<double> breakpoints, std::vector<double> values, std::vector<SegmentKind> kinds,
             std::vector<double> end_values = {});

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<SegmentKind>& kinds() const { return kinds_; }
  const std::vector<double>& end_values() const { return end_values_; }
  int segments() const { return static_cast<int>(kinds_.size()); }

  double mu() const { return breakpoints_.front(); }
  double M() const { return breakpoints_.back(); }

  double operator()(double r) const;
  /// lim_{s -> r-} f(s).
  double left_limit(double r) const;
  /// Radii where f has a jump, including mu when f(mu) > 0.
  std::vector<double> jump_radii() const;
  /// Slope of segment i (0 for constant segments).
  double slope(int i) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<SegmentKind> kinds_;
  std::vector<double> end_values_;
};

/// Example function with a jump of 1/2 at r = 1 and a linear ramp to 1 at r = 1.0992.
CandidateH example_jump_ramp();

/// Right-continuous step function with strictly increasing values ending at 1.
struct StepH {
  std::vector<double> radii;
  std::vector<double> values;

  double operator()(double r) const;
  /// Jump heights v_k - v_{k-1} (v_{-1} = 0).
  std::vector<double> jumps() const;
  double mu() const { return radii.front(); }
  double M() const { return radii.back(); }
};

/// Checks StepH structure; throws InputError.
void validate(const StepH& s);

double evaluate(const CandidateH& f, double r);
/// alpha = (M - mu) * inf of secant slopes on [mu, M].
double minimal_secant_slope(const CandidateH& f);
/// alpha restricted to secants between grid radii of a step function.
double grid_secant_slope(const StepH& s);
/// beta = f(mu).
double jump_at_mu(const CandidateH& f);

/// Grid r_{n,k} = mu + (M - mu) k / n, values f(r_{n,k}); zero-height jumps dropped.
StepH step_approximation(const CandidateH& f, int n);
/// The full grid r_{n,0..n}, including radii dropped from the StepH.
std::vector<double> step_grid(const CandidateH& f, int n);

struct NecessaryReport {
  bool right_continuous = true;
  bool monotone = true;
  bool range_ok = true;
  bool positive_inside = true;
  bool beurling_ok = true;
  /// First grid radius where f falls below the Beurling bound.
  std::optional<double> first_violation;
  std::vector<std::string> messages;

  bool pass() const { return right_continuous && monotone && range_ok && positive_inside && beurling_ok; }
};

NecessaryReport necessary_checks(const CandidateH& f, int beurling_grid = 1024);

/// Continuous extension of f^{-1} on [0, 1]; jumps map to their radius. Throws InputError
/// when f has a constant segment on [mu, M].
double inverse(const CandidateH& f, double y);

const char* to_string(SegmentKind kind);
SegmentKind segment_kind_from(const std::string& name);

}  // namespace hmdf
