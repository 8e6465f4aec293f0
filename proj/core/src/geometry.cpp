#include "hmdf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_pair(int n, int j, int k) {
  if (j < 0 || k > n || j >= k) {
    throw InputError(fmt::format("index pair ({}, {}) outside 0 <= j < k <= {}", j, k, n));
  }
}

void check_circle(const CircleDomain& d, Diagnostics& out) {
  const auto& arcs = d.arcs();
  if (arcs.empty()) {
    out.violations.push_back("domain has no arcs");
    return;
  }
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    if (!(a.radius > 0.0) || !std::isfinite(a.radius)) {
      out.violations.push_back(fmt::format("arc {}: radius must be positive", k));
    }
    if (!(a.half_angle >= 0.0 && a.half_angle <= kPi)) {
      out.violations.push_back(fmt::format("arc {}: half angle outside [0, pi]", k));
    }
    if (k > 0 && !(arcs[k - 1].radius < a.radius)) {
      out.violations.push_back(fmt::format("radii not increasing at arc {}", k));
    }
    if (k + 1 < arcs.size()) {
      if (a.half_angle >= kPi) {
        out.violations.push_back(fmt::format("inner arc {} is a full circle", k));
      }
      if (a.half_angle == 0.0) {
        out.notes.push_back(fmt::format("arc {} is a point: capacity-zero feature", k));
      }
    }
  }
  if (arcs.back().half_angle != kPi) {
    out.violations.push_back("outer boundary not full circle");
  }
}

}  // namespace

CircleDomain::CircleDomain(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {}

CircleDomain CircleDomain::from(const std::vector<double>& radii, const std::vector<double>& psi) {
  if (radii.size() != psi.size()) {
    throw InputError(fmt::format("radii ({}) and psi ({}) differ in length", radii.size(), psi.size()));
  }
  std::vector<Arc> arcs(radii.size());
  for (std::size_t k = 0; k < radii.size(); ++k) arcs[k] = {radii[k], psi[k]};
  return CircleDomain(std::move(arcs));
}

CircleDomain CircleDomain::disk(double radius) { return CircleDomain({{radius, kPi}}); }

std::vector<double> CircleDomain::radii() const {
  std::vector<double> out;
  for (const Arc& a : arcs_) out.push_back(a.radius);
  return out;
}

std::vector<double> CircleDomain::psis() const {
  std::vector<double> out;
  for (const Arc& a : arcs_) out.push_back(a.half_angle);
  return out;
}

double BlockedCircleDomain::chi(int k) const {
  return std::min(base.psi(k), base.psi(k + 1)) - gate_angles.at(k);
}

std::vector<double> BlockedCircleDomain::chis() const {
  std::vector<double> out;
  for (int k = 0; k < static_cast<int>(gate_angles.size()); ++k) out.push_back(chi(k));
  return out;
}

const char* to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::arc:
      return "arc";
    case FeatureKind::gate:
      return "gate";
    case FeatureKind::outer:
      return "outer";
  }
  return "unknown";
}

Diagnostics validate(const CircleDomain& d) {
  Diagnostics out;
  check_circle(d, out);
  out.simply_connected = out.ok() && d.n() == 0;
  return out;
}

Diagnostics validate(const BlockedCircleDomain& d) {
  Diagnostics out;
  check_circle(d.base, out);
  const int n = d.base.n();
  if (static_cast<int>(d.gate_angles.size()) != std::max(n, 0)) {
    out.violations.push_back(
        fmt::format("expected {} gate angles, got {}", std::max(n, 0), d.gate_angles.size()));
    out.simply_connected = false;
    return out;
  }
  bool blocked = true;
  for (int k = 0; k < n && out.ok(); ++k) {
    const double phi = d.gate_angles[k];
    const double cap = std::min(d.base.psi(k), d.base.psi(k + 1));
    if (!(phi >= 0.0 && phi <= cap)) {
      out.violations.push_back(fmt::format("gate {}: angle outside [0, min(psi_k, psi_k+1)]", k));
      blocked = false;
    }
  }
  out.simply_connected = out.ok() && blocked;
  return out;
}

BoundaryGeometry::BoundaryGeometry(const CircleDomain& d) {
  const int n = d.n();
  if (n < 0) throw InputError("domain has no arcs");
  for (int k = 0; k <= n; ++k) {
    const double psi = d.psi(k);
    if (k < n && psi == 0.0) continue;
    arcs_.push_back({d.radius(k), psi, std::cos(psi), std::sin(psi), k, k == n});
  }
  outer_ = d.M();
}

BoundaryGeometry::BoundaryGeometry(const BlockedCircleDomain& d) : BoundaryGeometry(d.base) {
  const int n = d.base.n();
  if (static_cast<int>(d.gate_angles.size()) != n) {
    throw InputError("gate angle count does not match the number of channels");
  }
  for (int k = 0; k < n; ++k) {
    const double phi = d.gate_angles[k];
    gates_.push_back({d.base.radius(k), d.base.radius(k + 1), phi, std::cos(phi), std::sin(phi), k, phi == 0.0});
  }
}

Nearest BoundaryGeometry::nearest(Point z) const {
  const double x = z.real();
  const double y = z.imag();
  const double ay = std::abs(y);
  const double rho = std::sqrt(x * x + y * y);
  const double ang = std::atan2(ay, x);
  const double sgn = y < 0.0 ? -1.0 : 1.0;

  Nearest best;
  best.distance = INFINITY;
  for (const ArcRec& a : arcs_) {
    double dist;
    Point p;
    if (ang <= a.psi) {
      dist = std::abs(rho - a.r);
      p = rho > 0.0 ? Point(x * a.r / rho, y * a.r / rho) : Point(a.r, 0.0);
    } else {
      const double dx = x - a.r * a.c;
      const double dy = ay - a.r * a.s;
      dist = std::sqrt(dx * dx + dy * dy);
      p = Point(a.r * a.c, sgn * a.r * a.s);
    }
    if (dist < best.distance) {
      best.distance = dist;
      best.point = p;
      best.feature = {a.outer ? FeatureKind::outer : FeatureKind::arc, a.index, 0, a.r};
    }
  }
  for (const GateRec& g : gates_) {
    const double t = std::clamp(x * g.c + ay * g.s, g.r0, g.r1);
    const double dx = x - t * g.c;
    const double dy = ay - t * g.s;
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist < best.distance) {
      best.distance = dist;
      best.point = Point(t * g.c, sgn * t * g.s);
      best.feature = {FeatureKind::gate, g.index, g.axis ? 0 : (y < 0.0 ? -1 : 1), t};
    }
  }
  return best;
}

bool BoundaryGeometry::in_pocket(Point z) const {
  const double rho = std::abs(z);
  const double ang = std::abs(std::arg(z));
  for (const GateRec& g : gates_) {
    if (rho >= g.r0 && rho <= g.r1 && ang <= g.phi) return true;
  }
  return false;
}

bool BoundaryGeometry::interior(Point z) const {
  if (!(std::abs(z) < outer_)) return false;
  if (in_pocket(z)) return false;
  for (const ArcRec& a : arcs_) {
    if (std::abs(z) == a.r && std::abs(std::arg(z)) <= a.psi) return false;
  }
  return true;
}

namespace {

Nearest checked_nearest(Point z, const BoundaryGeometry& g) {
  if (!g.interior(z)) {
    throw InputError(fmt::format("point ({}, {}) is not interior", z.real(), z.imag()));
  }
  Nearest out = g.nearest(z);
  if (!(out.distance > 0.0)) {
    throw InputError(fmt::format("point ({}, {}) is not interior", z.real(), z.imag()));
  }
  return out;
}

}  // namespace

Nearest distance_to_boundary(Point z, const CircleDomain& d) {
  return checked_nearest(z, BoundaryGeometry(d));
}

Nearest distance_to_boundary(Point z, const BlockedCircleDomain& d) {
  return checked_nearest(z, BoundaryGeometry(d));
}

double eta(const CircleDomain& d, int j, int k) {
  check_pair(d.n(), j, k);
  double low = d.psi(j);
  for (int l = j; l <= k; ++l) low = std::min(low, d.psi(l));
  return std::min(d.psi(j), d.psi(k)) - low;
}

double theta(const BlockedCircleDomain& d, int j, int k) {
  check_pair(d.base.n(), j, k);
  double low = d.gate_angles.at(j);
  for (int l = j; l < k; ++l) low = std::min(low, d.gate_angles.at(l));
  return std::min(d.base.psi(j), d.base.psi(k)) - low;
}

double max_chi(const BlockedCircleDomain& d, int j, int k) {
  check_pair(d.base.n(), j, k);
  double high = 0.0;
  for (int l = j; l < k; ++l) high = std::max(high, d.chi(l));
  return high;
}

double sector_diameter_bound(double r, double R, double angle) { return (R - r) + R * angle; }

double angle_between(Point z, Point w) {
  double t = std::abs(std::arg(z) - std::arg(w));
  return t > kPi ? 2.0 * kPi - t : t;
}

}  // namespace hmdf
