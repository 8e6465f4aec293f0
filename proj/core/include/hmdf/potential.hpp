#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmdf/geometry.hpp"

namespace hmdf {

enum class Method { wos, fd, exact };

const char* to_string(Method m);

/// A harmonic-measure value with its statistical and discretization errors.
struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Method method = Method::exact;
  long long sample_count = 0;
  int grid_resolution = 0;
  long long discard_count = 0;
  /// |fine - coarse| from a resolution-doubling pair (fd only).
  double grid_error = 0.0;
};

struct HFunctionTable {
  std::vector<double> radii;
  std::vector<MeasureEstimate> estimates;
};

/// Selects boundary features: any kind when kind is empty, any index when index < 0,
/// both gates of a pair when side == 0.
struct FeatureSelector {
  std::optional<FeatureKind> kind;
  int index = -1;
  int side = 0;

  bool matches(const BoundaryFeature& f) const;
  static FeatureSelector everything() { return {}; }
  static FeatureSelector arc(int k) { return {FeatureKind::arc, k, 0}; }
  static FeatureSelector outer() { return {FeatureKind::outer, -1, 0}; }
  static FeatureSelector gate(int k, int side = 0) { return {FeatureKind::gate, k, side}; }
  static FeatureSelector all_gates() { return {FeatureKind::gate, -1, 0}; }
};

/// The disk B(a, R) with 0 inside, as a boundary model for both engines.
class OffCenterDisk {
 public:
  OffCenterDisk(Point center, double radius);

  Point center() const { return a_; }
  double radius() const { return R_; }
  double outer_radius() const { return std::abs(a_) + R_; }
  bool interior(Point z) const { return std::abs(z - a_) < R_; }
  Nearest nearest(Point z) const;

 private:
  Point a_;
  double R_;
};

}  // namespace hmdf
