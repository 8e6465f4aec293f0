#pragma once

#include <memory>
#include <vector>

#include "hmdf/geometry.hpp"
#include "hmdf/potential.hpp"

namespace hmdf {

struct FdOptions {
  /// Angular intervals over the full circle; the solver works on the upper half [0, pi].
  int resolution = 512;
  /// Minimum radial intervals between consecutive arc radii.
  int min_channel_intervals = 2;
  /// Boundary crossings closer than snap * spacing to a node are moved onto the node.
  double snap = 1e-6;
  /// Also solve at twice the resolution and report |fine - coarse| as grid_error.
  bool richardson = true;
};

/// Share of the exit measure carried by one piece of boundary. The piece spans moduli
/// [mod_lo, mod_hi]; h-tables treat the modulus as uniform over that span.
struct FdDatum {
  double weight = 0.0;
  BoundaryFeature feature;
  double mod_lo = 0.0;
  double mod_hi = 0.0;
};

/// Discrete exit measure of the origin on one grid.
struct FdSolution {
  std::vector<FdDatum> data;
  int resolution = 0;
  int unknowns = 0;
  /// max |A y - l| / max |l| of the adjoint solve.
  double residual = 0.0;

  double total() const;
  double h(double r) const;
  double measure(const FeatureSelector& sel) const;
};

/// Log-polar solver bound to a fixed set of arc radii; reusable across angle changes.
class FdSolver {
 public:
  FdSolver(const std::vector<double>& radii, const FdOptions& opt);
  ~FdSolver();
  FdSolver(FdSolver&&) noexcept;
  FdSolver& operator=(FdSolver&&) noexcept;

  FdSolution solve(const CircleDomain& d) const;
  FdSolution solve(const BlockedCircleDomain& d) const;
  int rings() const;
  int resolution() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

FdSolution fd_solve(const CircleDomain& d, const FdOptions& opt);
FdSolution fd_solve(const BlockedCircleDomain& d, const FdOptions& opt);
FdSolution fd_solve(const OffCenterDisk& d, const FdOptions& opt);

/// Harmonic measure of each target, with a resolution-doubling error estimate when requested.
std::vector<MeasureEstimate> fd_harmonic_measure(const BlockedCircleDomain& d,
                                                 const std::vector<FeatureSelector>& targets, const FdOptions& opt);
std::vector<MeasureEstimate> fd_harmonic_measure(const CircleDomain& d, const std::vector<FeatureSelector>& targets,
                                                 const FdOptions& opt);

HFunctionTable fd_estimate_h(const BlockedCircleDomain& d, const std::vector<double>& radii, const FdOptions& opt);
HFunctionTable fd_estimate_h(const CircleDomain& d, const std::vector<double>& radii, const FdOptions& opt);
HFunctionTable fd_estimate_h(const OffCenterDisk& d, const std::vector<double>& radii, const FdOptions& opt);

}  // namespace hmdf
