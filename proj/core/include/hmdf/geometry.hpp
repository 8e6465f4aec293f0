#pragma once

#include <complex>
#include <string>
#include <vector>

namespace hmdf {

using Point = std::complex<double>;

/// Closed circular arc {r e^{it} : |t| <= half_angle}, centered on the positive real axis.
struct Arc {
  double radius = 1.0;
  double half_angle = 0.0;
};

/// Disk B(0, r_n) minus arcs A_0..A_{n-1}; the last arc is the full boundary circle.
class CircleDomain {
 public:
  CircleDomain() = default;
  explicit CircleDomain(std::vector<Arc> arcs);
  static CircleDomain from(const std::vector<double>& radii, const std::vector<double>& psi);
  static CircleDomain disk(double radius);

  const std::vector<Arc>& arcs() const { return arcs_; }
  /// Index of the outer circle (number of inner arcs).
  int n() const { return static_cast<int>(arcs_.size()) - 1; }
  double radius(int k) const { return arcs_.at(k).radius; }
  double psi(int k) const { return arcs_.at(k).half_angle; }
  double mu() const { return arcs_.front().radius; }
  double M() const { return arcs_.back().radius; }
  std::vector<double> radii() const;
  std::vector<double> psis() const;

 private:
  std::vector<Arc> arcs_;
};

/// Circle domain with a symmetric pair of radial gates in every channel r_k < |z| < r_{k+1}.
/// The closed pocket {r_k <= |z| <= r_{k+1}, |arg z| <= phi_k} is removed.
struct BlockedCircleDomain {
  CircleDomain base;
  std::vector<double> gate_angles;

  /// Inset chi_k = min(psi_k, psi_{k+1}) - phi_k.
  double chi(int k) const;
  std::vector<double> chis() const;
};

enum class FeatureKind { arc, gate, outer };

const char* to_string(FeatureKind kind);

/// Boundary piece a walk exits through. side is +1/-1 for the upper/lower gate of a pair, 0 otherwise.
struct BoundaryFeature {
  FeatureKind kind = FeatureKind::outer;
  int index = 0;
  int side = 0;
  double modulus = 0.0;
};

struct Nearest {
  double distance = 0.0;
  BoundaryFeature feature;
  Point point;
};

struct Diagnostics {
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool symmetric = true;
  bool simply_connected = false;

  bool ok() const { return violations.empty(); }
};

Diagnostics validate(const CircleDomain& d);
Diagnostics validate(const BlockedCircleDomain& d);

/// Precomputed feature list for fast nearest-feature queries. Point arcs (psi = 0) are skipped.
class BoundaryGeometry {
 public:
  explicit BoundaryGeometry(const CircleDomain& d);
  explicit BoundaryGeometry(const BlockedCircleDomain& d);

  /// Nearest feature without an interior check. Ties go to the first feature in the order
  /// arcs by index, outer circle, gates by index.
  Nearest nearest(Point z) const;
  bool in_pocket(Point z) const;
  bool interior(Point z) const;
  double outer_radius() const { return outer_; }

 private:
  struct ArcRec {
    double r, psi, c, s;
    int index;
    bool outer;
  };
  struct GateRec {
    double r0, r1, phi, c, s;
    int index;
    bool axis;
  };
  std::vector<ArcRec> arcs_;
  std::vector<GateRec> gates_;
  double outer_ = 0.0;
};

/// Exact distance from an interior point to the boundary; throws InputError when z is not interior.
Nearest distance_to_boundary(Point z, const CircleDomain& d);
Nearest distance_to_boundary(Point z, const BlockedCircleDomain& d);

/// Depth of the shortest arc between arcs j and k: min(psi_j, psi_k) - min_{j<=l<=k} psi_l.
double eta(const CircleDomain& d, int j, int k);
/// Depth of the deepest gate between arcs j and k: min(psi_j, psi_k) - min_{j<=l<k} phi_l.
double theta(const BlockedCircleDomain& d, int j, int k);
/// max_{j<=l<k} chi_l.
double max_chi(const BlockedCircleDomain& d, int j, int k);

/// Diameter bound for the sector {r <= |z| <= R, |arg z - t| <= angle/2}: (R - r) + R * angle.
double sector_diameter_bound(double r, double R, double angle);
/// Angular separation of two points, bounded through |z| * angle <= pi |z - w| for |z| <= |w|.
double angle_between(Point z, Point w);

}  // namespace hmdf
