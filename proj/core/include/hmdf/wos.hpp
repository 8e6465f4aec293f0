#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hmdf/geometry.hpp"
#include "hmdf/potential.hpp"

namespace hmdf {

struct WosOptions {
  long long samples = 100000;
  /// Shell thickness relative to the outer radius.
  double eps_rel = 1e-5;
  int max_steps = 10000;
  std::uint64_t seed = 1;
  /// Worker threads; 0 uses the hardware concurrency.
  int threads = 0;
  /// Mirror every angular draw (theta -> -theta).
  bool reflect = false;
};

struct WalkExit {
  BoundaryFeature feature;
  Point point;
  int steps = 0;
  bool capped = false;
};

/// Stream seed for walk number index of a run seeded with seed.
std::uint64_t walk_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// One walk on spheres from z0 until the nearest boundary is closer than eps.
template <class Boundary>
WalkExit walk(const Boundary& b, Point z0, double eps, int max_steps, std::mt19937_64& rng, bool reflect = false) {
  Point z = z0;
  WalkExit out;
  for (int step = 0; step < max_steps; ++step) {
    const Nearest nb = b.nearest(z);
    if (nb.distance < eps) {
      out.feature = nb.feature;
      out.point = nb.point;
      out.steps = step;
      return out;
    }
    double t = 2.0 * std::numbers::pi * uniform01(rng);
    if (reflect) t = -t;
    z += nb.distance * Point(std::cos(t), std::sin(t));
  }
  out.capped = true;
  out.steps = max_steps;
  out.point = z;
  return out;
}

/// Single exit sample; throws InputError when z0 is not interior.
WalkExit wos_exit_sample(const BlockedCircleDomain& d, Point z0, double eps, std::mt19937_64& rng,
                         int max_steps = 10000);
WalkExit wos_exit_sample(const CircleDomain& d, Point z0, double eps, std::mt19937_64& rng, int max_steps = 10000);

struct ExitRecord {
  double modulus = 0.0;
  float x = 0.0f;
  float y = 0.0f;
  std::int32_t index = 0;
  std::int8_t kind = 0;
  std::int8_t side = 0;
  bool capped = false;

  BoundaryFeature feature() const;
};

/// All exits of a run, in walk order.
struct ExitEnsemble {
  std::vector<ExitRecord> exits;
  long long discards = 0;

  long long completed() const { return static_cast<long long>(exits.size()) - discards; }
  MeasureEstimate measure(const FeatureSelector& sel) const;
  /// Fraction of completed walks with exit modulus <= r.
  MeasureEstimate h(double r) const;
  HFunctionTable table(const std::vector<double>& radii) const;
};

ExitEnsemble wos_ensemble(const BlockedCircleDomain& d, const WosOptions& opt, Point z0 = {0.0, 0.0});
ExitEnsemble wos_ensemble(const CircleDomain& d, const WosOptions& opt, Point z0 = {0.0, 0.0});
ExitEnsemble wos_ensemble(const OffCenterDisk& d, const WosOptions& opt, Point z0 = {0.0, 0.0});

HFunctionTable estimate_h(const BlockedCircleDomain& d, const std::vector<double>& radii, const WosOptions& opt,
                          Point z0 = {0.0, 0.0});
HFunctionTable estimate_h(const CircleDomain& d, const std::vector<double>& radii, const WosOptions& opt,
                          Point z0 = {0.0, 0.0});
HFunctionTable estimate_h(const OffCenterDisk& d, const std::vector<double>& radii, const WosOptions& opt,
                          Point z0 = {0.0, 0.0});

}  // namespace hmdf
