#include "hmdf/fd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf {

namespace {

constexpr double kPi = std::numbers::pi;

enum class RingKind { inner, arc, channel };

struct Ring {
  double s = 0.0;
  double r = 0.0;
  RingKind kind = RingKind::inner;
  int index = 0;
};

// Log-polar grid on the upper half plane. Ring 0 sits below every feature; its inward
// neighbour is eliminated exactly through the discrete harmonic extension into the disk.
struct Grid {
  int resolution = 0;
  int nh = 0;
  double dt = 0.0;
  double h_in = 0.0;
  std::vector<double> theta;
  std::vector<double> wtheta;
  std::vector<Ring> rings;
  std::vector<double> radii;
  Eigen::MatrixXd dtn;

  int size() const { return static_cast<int>(rings.size()); }
  double ds_lo(int i) const { return i > 0 ? rings[i].s - rings[i - 1].s : h_in; }
  double ds_hi(int i) const { return i + 1 < size() ? rings[i + 1].s - rings[i].s : ds_lo(i); }
  double wradial(int i) const { return 0.5 * (ds_lo(i) + ds_hi(i)); }
};

Grid make_grid(const std::vector<double>& radii, int resolution, int min_intervals) {
  if (resolution < 8 || resolution % 2 != 0) {
    throw InputError(fmt::format("resolution must be an even number >= 8 (got {})", resolution));
  }
  if (min_intervals < 1) throw InputError("channels need at least one radial interval");
  if (radii.empty() || !(radii.front() > 0.0)) throw InputError("grid needs positive radii");
  Grid g;
  g.resolution = resolution;
  g.radii = radii;
  g.nh = resolution / 2;
  g.dt = kPi / g.nh;
  g.theta.resize(g.nh + 1);
  g.wtheta.assign(g.nh + 1, g.dt);
  for (int j = 0; j <= g.nh; ++j) g.theta[j] = j * g.dt;
  g.wtheta.front() = g.wtheta.back() = 0.5 * g.dt;

  const int n = static_cast<int>(radii.size()) - 1;
  std::vector<int> intervals(std::max(n, 0));
  for (int k = 0; k < n; ++k) {
    const double span = std::log(radii[k + 1] / radii[k]);
    if (!(span > 0.0)) throw InputError("radii must be strictly increasing");
    intervals[k] = std::max(min_intervals, static_cast<int>(std::ceil(span / g.dt - 1e-9)));
    if (span / intervals[k] < 1e-12) {
      throw EngineError(fmt::format("radii {} and {} are too close to resolve", radii[k], radii[k + 1]));
    }
  }
  g.h_in = n > 0 ? std::log(radii[1] / radii[0]) / intervals[0] : g.dt;

  const double s0 = std::log(radii[0]);
  g.rings.push_back({s0 - g.h_in, radii[0] * std::exp(-g.h_in), RingKind::inner, 0});
  for (int k = 0; k <= n; ++k) {
    const double sk = std::log(radii[k]);
    g.rings.push_back({sk, radii[k], RingKind::arc, k});
    if (k == n) break;
    const double step = (std::log(radii[k + 1]) - sk) / intervals[k];
    for (int m = 1; m < intervals[k]; ++m) {
      const double s = sk + m * step;
      g.rings.push_back({s, std::exp(s), RingKind::channel, k});
    }
  }

  // Discrete extension of each cosine mode one ring inward: q + 1/q = 2 + h^2 lambda_m.
  const int m1 = g.nh + 1;
  Eigen::MatrixXd C(m1, m1);
  Eigen::VectorXd D(m1);
  for (int m = 0; m < m1; ++m) {
    for (int j = 0; j < m1; ++j) C(m, j) = std::cos(m * g.theta[j]);
    const double lambda = (2.0 - 2.0 * std::cos(m * g.dt)) / (g.dt * g.dt);
    const double b = 1.0 + 0.5 * g.h_in * g.h_in * lambda;
    const double q = 1.0 / (b + std::sqrt(std::max(0.0, b * b - 1.0)));
    const double norm = (m == 0 || m == g.nh) ? kPi : 0.5 * kPi;
    D(m) = q / norm;
  }
  Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(g.wtheta.data(), m1);
  Eigen::MatrixXd CW = C * w.asDiagonal();
  g.dtn = (CW.transpose() * D.asDiagonal() * CW) / g.h_in;
  return g;
}

struct Piece {
  double share = 1.0;
  BoundaryFeature feature;
  double lo = 0.0;
  double hi = 0.0;
};

enum class NodeKind : std::uint8_t { free, dirichlet, excluded };

struct NodeInfo {
  NodeKind kind = NodeKind::free;
  std::vector<Piece> pieces;
};

struct Crossing {
  double frac = 1.0;
  std::vector<Piece> pieces;
};

class Model {
 public:
  virtual ~Model() = default;
  virtual NodeInfo classify(const Grid& g, int i, int j) const = 0;
  virtual Crossing cross(const Grid& g, int i, int j, int di, int dj, const NodeInfo& q) const = 0;
};

NodeInfo dirichlet(std::vector<Piece> pieces) { return {NodeKind::dirichlet, std::move(pieces)}; }

class RingModel : public Model {
 public:
  RingModel(const CircleDomain& d, const std::vector<double>* phi, double snap) : d_(d), phi_(phi), snap_(snap) {}

  NodeInfo classify(const Grid& g, int i, int j) const override {
    const Ring& ring = g.rings[i];
    const double th = g.theta[j];
    const double tol = snap_ * g.dt;
    const int n = d_.n();
    if (ring.kind == RingKind::inner) return {};
    if (ring.kind == RingKind::arc) {
      const int k = ring.index;
      if (k == n) return dirichlet({outer_piece()});
      if (d_.psi(k) > 0.0 && th <= d_.psi(k) + tol) return dirichlet({arc_piece(k)});
      if (j == 0 && phi_) {
        std::vector<Piece> p;
        const double below = k > 0 && (*phi_)[k - 1] == 0.0 ? 0.5 * g.ds_lo(i) : 0.0;
        const double above = k < n && (*phi_)[k] == 0.0 ? 0.5 * g.ds_hi(i) : 0.0;
        if (below > 0.0) p.push_back({below / (below + above), gate(k - 1, 0, ring.r), std::exp(ring.s - below), ring.r});
        if (above > 0.0) p.push_back({above / (below + above), gate(k, 0, ring.r), ring.r, std::exp(ring.s + above)});
        if (!p.empty()) return dirichlet(std::move(p));
      }
      return {};
    }
    if (!phi_) return {};
    const int k = ring.index;
    const double phi = (*phi_)[k];
    if (phi == 0.0) {
      if (j == 0) return dirichlet({channel_gate(g, i, 0)});
      return {};
    }
    if (std::abs(th - phi) <= tol) return dirichlet({channel_gate(g, i, 1)});
    if (th < phi) return {NodeKind::excluded, {}};
    return {};
  }

  Crossing cross(const Grid& g, int i, int j, int di, int dj, const NodeInfo& q) const override {
    if (q.kind != NodeKind::dirichlet && (di != 0 || dj != -1)) {
      throw EngineError("link into an excluded node outside an angular crossing");
    }
    if (di != 0) return {1.0, q.pieces};
    if (dj != -1) throw EngineError("unexpected boundary crossing toward larger angles");
    const Ring& ring = g.rings[i];
    const double th = g.theta[j];
    if (ring.kind == RingKind::arc && d_.psi(ring.index) > 0.0) {
      return {(th - d_.psi(ring.index)) / g.dt, {arc_piece(ring.index)}};
    }
    if (ring.kind == RingKind::channel && phi_ && (*phi_)[ring.index] > 0.0) {
      return {(th - (*phi_)[ring.index]) / g.dt, {channel_gate(g, i, 1)}};
    }
    if (q.kind != NodeKind::dirichlet) throw EngineError("angular link into an excluded node");
    return {1.0, q.pieces};
  }

 private:
  Piece outer_piece() const { return {1.0, {FeatureKind::outer, d_.n(), 0, d_.M()}, d_.M(), d_.M()}; }
  Piece arc_piece(int k) const {
    const double r = d_.radius(k);
    return {1.0, {FeatureKind::arc, k, 0, r}, r, r};
  }
  static BoundaryFeature gate(int k, int side, double r) { return {FeatureKind::gate, k, side, r}; }
  Piece channel_gate(const Grid& g, int i, int side) const {
    const Ring& ring = g.rings[i];
    const int k = ring.index;
    const double lo = std::max(d_.radius(k), std::exp(ring.s - 0.5 * g.ds_lo(i)));
    const double hi = std::min(d_.radius(k + 1), std::exp(ring.s + 0.5 * g.ds_hi(i)));
    return {1.0, gate(k, side, ring.r), lo, hi};
  }

  const CircleDomain& d_;
  const std::vector<double>* phi_;
  double snap_;
};

// Disk B(a, R) with a > 0 on the real axis: the boundary is the graph of rho(theta).
class StarModel : public Model {
 public:
  StarModel(double a, double R, double snap) : a_(a), R_(R), snap_(snap) {}

  double rho(double th) const {
    const double s = std::sin(th);
    return a_ * std::cos(th) + std::sqrt(R_ * R_ - a_ * a_ * s * s);
  }

  NodeInfo classify(const Grid& g, int i, int j) const override {
    const double L = std::log(rho(g.theta[j]));
    const double tol = snap_ * g.wradial(i);
    const double s = g.rings[i].s;
    if (s < L - tol) return {};
    if (s <= L + tol) return dirichlet({angular_patch(g, j)});
    return {NodeKind::excluded, {}};
  }

  Crossing cross(const Grid& g, int i, int j, int di, int dj, const NodeInfo&) const override {
    if (di == 1) {
      const double L = std::log(rho(g.theta[j]));
      return {(L - g.rings[i].s) / (g.rings[i + 1].s - g.rings[i].s), {angular_patch(g, j)}};
    }
    if (di != 0) throw EngineError("inward link left the star-shaped domain");
    const double r = g.rings[i].r;
    const double c = std::clamp((r * r + a_ * a_ - R_ * R_) / (2.0 * r * a_), -1.0, 1.0);
    const double edge = std::acos(c);
    const double lo = std::exp(g.rings[i].s - 0.5 * g.ds_lo(i));
    const double hi = std::exp(g.rings[i].s + 0.5 * g.ds_hi(i));
    (void)dj;
    return {std::abs(edge - g.theta[j]) / g.dt, {{1.0, {FeatureKind::outer, 0, 0, r}, lo, hi}}};
  }

 private:
  Piece angular_patch(const Grid& g, int j) const {
    const double th = g.theta[j];
    const double lo = rho(std::min(kPi, th + 0.5 * g.dt));
    const double hi = rho(std::max(0.0, th - 0.5 * g.dt));
    return {1.0, {FeatureKind::outer, 0, 0, rho(th)}, lo, hi};
  }

  double a_;
  double R_;
  double snap_;
};

FdSolution solve_on(const Grid& g, const Model& model, double snap) {
  const int nr = g.size();
  const int m1 = g.nh + 1;
  const auto id = [m1](int i, int j) { return i * m1 + j; };

  std::vector<NodeInfo> info(static_cast<std::size_t>(nr) * m1);
  std::vector<int> index(info.size(), -1);
  int unknowns = 0;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < m1; ++j) {
      info[id(i, j)] = model.classify(g, i, j);
      if (info[id(i, j)].kind == NodeKind::free) index[id(i, j)] = unknowns++;
    }
  }
  for (int j = 0; j < m1; ++j) {
    if (index[id(0, j)] < 0) throw EngineError("boundary reaches the innermost ring");
  }

  struct Link {
    int row;
    double w;
    std::vector<Piece> pieces;
  };
  std::vector<Link> links;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(unknowns) * 5 + static_cast<std::size_t>(m1) * m1);

  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < m1; ++j) {
      const int row = index[id(i, j)];
      if (row < 0) continue;
      double diag = 0.0;
      const auto couple = [&](int ni, int nj, double w, int di, int dj) {
        const int col = index[id(ni, nj)];
        if (col >= 0) {
          trip.emplace_back(row, col, -w);
          diag += w;
          return;
        }
        Crossing c = model.cross(g, i, j, di, dj, info[id(ni, nj)]);
        const double wb = w / std::clamp(c.frac, snap, 1.0);
        diag += wb;
        links.push_back({row, wb, std::move(c.pieces)});
      };
      if (i + 1 < nr) couple(i + 1, j, g.wtheta[j] / (g.rings[i + 1].s - g.rings[i].s), 1, 0);
      if (i > 0) couple(i - 1, j, g.wtheta[j] / (g.rings[i].s - g.rings[i - 1].s), -1, 0);
      if (j > 0) couple(i, j - 1, g.wradial(i) / g.dt, 0, -1);
      if (j < g.nh) couple(i, j + 1, g.wradial(i) / g.dt, 0, 1);
      if (i == 0) {
        diag += g.wtheta[j] / g.h_in;
        for (int l = 0; l < m1; ++l) trip.emplace_back(row, index[id(0, l)], -g.dtn(j, l));
      }
      trip.emplace_back(row, row, diag);
    }
  }

  Eigen::SparseMatrix<double> A(unknowns, unknowns);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::VectorXd ell = Eigen::VectorXd::Zero(unknowns);
  for (int j = 0; j < m1; ++j) ell(index[id(0, j)]) = g.wtheta[j] / kPi;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success) throw EngineError("sparse factorization failed");
  Eigen::VectorXd y = ldlt.solve(ell);
  double residual = (A * y - ell).lpNorm<Eigen::Infinity>() / ell.lpNorm<Eigen::Infinity>();
  for (int pass = 0; pass < 3 && residual > 1e-13; ++pass) {
    y += ldlt.solve(ell - A * y);
    residual = (A * y - ell).lpNorm<Eigen::Infinity>() / ell.lpNorm<Eigen::Infinity>();
  }
  if (!std::isfinite(residual)) throw EngineError("finite-difference solve produced non-finite values");

  FdSolution out;
  out.resolution = g.resolution;
  out.unknowns = unknowns;
  out.residual = residual;
  for (const Link& l : links) {
    for (const Piece& p : l.pieces) {
      out.data.push_back({y(l.row) * l.w * p.share, p.feature, p.lo, p.hi});
    }
  }
  return out;
}

template <class Domain>
std::vector<MeasureEstimate> measure_pair(const Domain& d, const std::vector<FeatureSelector>& targets,
                                          const FdOptions& opt) {
  const FdSolution coarse = fd_solve(d, opt);
  std::vector<MeasureEstimate> out;
  if (!opt.richardson) {
    for (const auto& t : targets) {
      MeasureEstimate m;
      m.method = Method::fd;
      m.value = coarse.measure(t);
      m.grid_resolution = opt.resolution;
      out.push_back(m);
    }
    return out;
  }
  FdOptions fine_opt = opt;
  fine_opt.resolution = 2 * opt.resolution;
  const FdSolution fine = fd_solve(d, fine_opt);
  for (const auto& t : targets) {
    MeasureEstimate m;
    m.method = Method::fd;
    m.value = fine.measure(t);
    m.grid_error = std::abs(m.value - coarse.measure(t));
    m.grid_resolution = fine_opt.resolution;
    out.push_back(m);
  }
  return out;
}

template <class Domain>
HFunctionTable table_pair(const Domain& d, const std::vector<double>& radii, const FdOptions& opt) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw InputError("radii must be sorted");
  const FdSolution coarse = fd_solve(d, opt);
  HFunctionTable t;
  t.radii = radii;
  std::optional<FdSolution> fine;
  if (opt.richardson) {
    FdOptions fine_opt = opt;
    fine_opt.resolution = 2 * opt.resolution;
    fine = fd_solve(d, fine_opt);
  }
  for (double r : radii) {
    MeasureEstimate m;
    m.method = Method::fd;
    if (fine) {
      m.value = fine->h(r);
      m.grid_error = std::abs(m.value - coarse.h(r));
      m.grid_resolution = fine->resolution;
    } else {
      m.value = coarse.h(r);
      m.grid_resolution = coarse.resolution;
    }
    t.estimates.push_back(m);
  }
  return t;
}

}  // namespace

double FdSolution::total() const {
  double s = 0.0;
  for (const FdDatum& d : data) s += d.weight;
  return s;
}

double FdSolution::h(double r) const {
  double s = 0.0;
  for (const FdDatum& d : data) {
    if (d.mod_hi <= r) {
      s += d.weight;
    } else if (d.mod_lo < r) {
      s += d.weight * (r - d.mod_lo) / (d.mod_hi - d.mod_lo);
    }
  }
  return std::clamp(s, 0.0, 1.0);
}

double FdSolution::measure(const FeatureSelector& sel) const {
  double s = 0.0;
  for (const FdDatum& d : data) {
    if (sel.matches(d.feature)) s += d.weight;
  }
  return s;
}

struct FdSolver::Impl {
  Grid grid;
  FdOptions opt;
};

FdSolver::FdSolver(const std::vector<double>& radii, const FdOptions& opt)
    : impl_(std::make_unique<Impl>(Impl{make_grid(radii, opt.resolution, opt.min_channel_intervals), opt})) {}
FdSolver::~FdSolver() = default;
FdSolver::FdSolver(FdSolver&&) noexcept = default;
FdSolver& FdSolver::operator=(FdSolver&&) noexcept = default;

int FdSolver::rings() const { return impl_->grid.size(); }
int FdSolver::resolution() const { return impl_->grid.resolution; }

FdSolution FdSolver::solve(const CircleDomain& d) const {
  if (d.radii() != impl_->grid.radii) throw InputError("domain radii differ from the solver grid");
  const Diagnostics diag = validate(d);
  if (!diag.ok()) throw InputError("invalid circle domain: " + diag.violations.front());
  return solve_on(impl_->grid, RingModel(d, nullptr, impl_->opt.snap), impl_->opt.snap);
}

FdSolution FdSolver::solve(const BlockedCircleDomain& d) const {
  if (d.base.radii() != impl_->grid.radii) throw InputError("domain radii differ from the solver grid");
  const Diagnostics diag = validate(d);
  if (!diag.ok()) throw InputError("invalid blocked domain: " + diag.violations.front());
  return solve_on(impl_->grid, RingModel(d.base, &d.gate_angles, impl_->opt.snap), impl_->opt.snap);
}

FdSolution fd_solve(const CircleDomain& d, const FdOptions& opt) { return FdSolver(d.radii(), opt).solve(d); }

FdSolution fd_solve(const BlockedCircleDomain& d, const FdOptions& opt) {
  return FdSolver(d.base.radii(), opt).solve(d);
}

FdSolution fd_solve(const OffCenterDisk& d, const FdOptions& opt) {
  const double a = std::abs(d.center());
  const double R = d.radius();
  if (a == 0.0) return fd_solve(CircleDomain::disk(R), opt);
  const Grid g = make_grid({R - a, R + a}, opt.resolution, opt.min_channel_intervals);
  return solve_on(g, StarModel(a, R, opt.snap), opt.snap);
}

std::vector<MeasureEstimate> fd_harmonic_measure(const BlockedCircleDomain& d,
                                                 const std::vector<FeatureSelector>& targets, const FdOptions& opt) {
  return measure_pair(d, targets, opt);
}

std::vector<MeasureEstimate> fd_harmonic_measure(const CircleDomain& d, const std::vector<FeatureSelector>& targets,
                                                 const FdOptions& opt) {
  return measure_pair(d, targets, opt);
}

HFunctionTable fd_estimate_h(const BlockedCircleDomain& d, const std::vector<double>& radii, const FdOptions& opt) {
  return table_pair(d, radii, opt);
}

HFunctionTable fd_estimate_h(const CircleDomain& d, const std::vector<double>& radii, const FdOptions& opt) {
  return table_pair(d, radii, opt);
}

HFunctionTable fd_estimate_h(const OffCenterDisk& d, const std::vector<double>& radii, const FdOptions& opt) {
  return table_pair(d, radii, opt);
}

}  // namespace hmdf
