#include "hmdf/wos.hpp"

#include <algorithm>
#include <thread>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <class Boundary>
ExitEnsemble run(const Boundary& b, double outer, const WosOptions& opt, Point z0) {
  if (!b.interior(z0)) {
    throw InputError(fmt::format("start point ({}, {}) is not interior", z0.real(), z0.imag()));
  }
  if (opt.samples < 1) throw InputError("walk count must be positive");
  if (!(opt.eps_rel > 0.0)) throw InputError("shell thickness must be positive");
  if (opt.max_steps < 1) throw InputError("step cap must be positive");

  const double eps = opt.eps_rel * outer;
  ExitEnsemble out;
  out.exits.resize(static_cast<std::size_t>(opt.samples));

  const auto work = [&](long long begin, long long end) {
    for (long long i = begin; i < end; ++i) {
      std::mt19937_64 rng(walk_seed(opt.seed, static_cast<std::uint64_t>(i)));
      const WalkExit w = walk(b, z0, eps, opt.max_steps, rng, opt.reflect);
      ExitRecord& r = out.exits[static_cast<std::size_t>(i)];
      r.capped = w.capped;
      r.modulus = w.feature.modulus;
      r.x = static_cast<float>(w.point.real());
      r.y = static_cast<float>(w.point.imag());
      r.index = w.feature.index;
      r.kind = static_cast<std::int8_t>(w.feature.kind);
      r.side = static_cast<std::int8_t>(w.feature.side);
    }
  };

  long long threads = opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, opt.samples);
  if (threads <= 1) {
    work(0, opt.samples);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (opt.samples + threads - 1) / threads;
    for (long long t = 0; t < threads; ++t) {
      const long long begin = t * chunk;
      const long long end = std::min(opt.samples, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  for (const ExitRecord& r : out.exits) out.discards += r.capped ? 1 : 0;
  return out;
}

MeasureEstimate binomial(long long hits, long long n, long long discards) {
  MeasureEstimate m;
  m.method = Method::wos;
  m.sample_count = n;
  m.discard_count = discards;
  if (n > 0) {
    m.value = static_cast<double>(hits) / static_cast<double>(n);
    m.std_error = std::sqrt(m.value * (1.0 - m.value) / static_cast<double>(n));
  }
  return m;
}

}  // namespace

std::uint64_t walk_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(splitmix64(seed) ^ index); }

WalkExit wos_exit_sample(const BlockedCircleDomain& d, Point z0, double eps, std::mt19937_64& rng, int max_steps) {
  const BoundaryGeometry g(d);
  if (!g.interior(z0)) throw InputError("start point is not interior");
  if (!(eps > 0.0)) throw InputError("shell thickness must be positive");
  return walk(g, z0, eps, max_steps, rng);
}

WalkExit wos_exit_sample(const CircleDomain& d, Point z0, double eps, std::mt19937_64& rng, int max_steps) {
  return wos_exit_sample(BlockedCircleDomain{d, {}}, z0, eps, rng, max_steps);
}

BoundaryFeature ExitRecord::feature() const {
  return {static_cast<FeatureKind>(kind), index, side, modulus};
}

MeasureEstimate ExitEnsemble::measure(const FeatureSelector& sel) const {
  long long hits = 0;
  for (const ExitRecord& r : exits) {
    if (!r.capped && sel.matches(r.feature())) ++hits;
  }
  return binomial(hits, completed(), discards);
}

MeasureEstimate ExitEnsemble::h(double r) const {
  long long hits = 0;
  for (const ExitRecord& e : exits) {
    if (!e.capped && e.modulus <= r) ++hits;
  }
  return binomial(hits, completed(), discards);
}

HFunctionTable ExitEnsemble::table(const std::vector<double>& radii) const {
  if (!std::is_sorted(radii.begin(), radii.end())) throw InputError("radii must be sorted");
  std::vector<double> mod;
  mod.reserve(exits.size());
  for (const ExitRecord& e : exits) {
    if (!e.capped) mod.push_back(e.modulus);
  }
  std::sort(mod.begin(), mod.end());
  HFunctionTable t;
  t.radii = radii;
  for (double r : radii) {
    const auto hits = std::upper_bound(mod.begin(), mod.end(), r) - mod.begin();
    t.estimates.push_back(binomial(hits, completed(), discards));
  }
  return t;
}

ExitEnsemble wos_ensemble(const BlockedCircleDomain& d, const WosOptions& opt, Point z0) {
  const BoundaryGeometry g(d);
  return run(g, g.outer_radius(), opt, z0);
}

ExitEnsemble wos_ensemble(const CircleDomain& d, const WosOptions& opt, Point z0) {
  const BoundaryGeometry g(d);
  return run(g, g.outer_radius(), opt, z0);
}

ExitEnsemble wos_ensemble(const OffCenterDisk& d, const WosOptions& opt, Point z0) {
  return run(d, d.outer_radius(), opt, z0);
}

HFunctionTable estimate_h(const BlockedCircleDomain& d, const std::vector<double>& radii, const WosOptions& opt,
                          Point z0) {
  return wos_ensemble(d, opt, z0).table(radii);
}

HFunctionTable estimate_h(const CircleDomain& d, const std::vector<double>& radii, const WosOptions& opt, Point z0) {
  return wos_ensemble(d, opt, z0).table(radii);
}

HFunctionTable estimate_h(const OffCenterDisk& d, const std::vector<double>& radii, const WosOptions& opt, Point z0) {
  return wos_ensemble(d, opt, z0).table(radii);
}

}  // namespace hmdf
