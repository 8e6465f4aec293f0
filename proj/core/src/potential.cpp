#include "hmdf/potential.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

const char* to_string(Method m) {
  switch (m) {
    case Method::wos:
      return "wos";
    case Method::fd:
      return "fd";
    case Method::exact:
      return "exact";
  }
  return "unknown";
}

bool FeatureSelector::matches(const BoundaryFeature& f) const {
  if (kind && *kind != f.kind) return false;
  if (index >= 0 && index != f.index) return false;
  if (side != 0 && side != f.side) return false;
  return true;
}

OffCenterDisk::OffCenterDisk(Point center, double radius) : a_(center), R_(radius) {
  if (!(radius > 0.0) || !(std::abs(center) < radius)) {
    throw InputError(fmt::format("disk B(a, R) must contain 0 (|a| = {}, R = {})", std::abs(center), radius));
  }
}

Nearest OffCenterDisk::nearest(Point z) const {
  const Point v = z - a_;
  const double m = std::abs(v);
  Nearest out;
  out.distance = R_ - m;
  out.point = m > 0.0 ? a_ + v * (R_ / m) : a_ + R_;
  out.feature = {FeatureKind::outer, 0, 0, std::abs(out.point)};
  return out;
}

}  // namespace hmdf
