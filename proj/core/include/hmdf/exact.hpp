#pragma once

#include "hmdf/geometry.hpp"

namespace hmdf {

/// 1 - (4/pi) arctan sqrt(mu/r): lower bound for h of a simply connected domain with h > 0 beyond mu.
double beurling_lower_bound(double mu, double r);

/// omega(0, [r_k, r_{k+1}], B(0, M) minus the slit [r_k, M]) in closed form.
double exact_slit_disk_gate(double rk, double rk1, double M);
/// The same quantity through the explicit conformal map of the slit disk onto a half-disk.
double slit_disk_gate_via_map(double rk, double rk1, double M);

/// h(r) of the disk B(a, R) seen from 0, via a disk automorphism fixing the image of 0.
double exact_offcenter_disk_h(Point a, double R, double r);

}  // namespace hmdf
