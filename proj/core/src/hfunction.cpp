#include "hmdf/hfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hmdf/error.hpp"
#include "hmdf/exact.hpp"

namespace hmdf {

CandidateH::CandidateH(std::vector<double> breakpoints, std::vector<double> values, std::vector<SegmentKind> kinds,
                       std::vector<double> end_values)
    : breakpoints_(std::move(breakpoints)),
      values_(std::move(values)),
      kinds_(std::move(kinds)),
      end_values_(std::move(end_values)) {
  const std::size_t m = breakpoints_.size();
  if (m < 2) throw InputError("candidate function needs at least two breakpoints");
  if (values_.size() != m) {
    throw InputError(fmt::format("expected {} values, got {}", m, values_.size()));
  }
  if (kinds_.size() != m - 1) {
    throw InputError(fmt::format("expected {} segment kinds, got {}", m - 1, kinds_.size()));
  }
  if (!(breakpoints_[0] > 0.0)) throw InputError("first breakpoint must be positive");
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(breakpoints_[i]) || !std::isfinite(values_[i])) {
      throw InputError("breakpoints and values must be finite");
    }
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
      throw InputError(fmt::format("breakpoints not strictly increasing at index {}", i));
    }
  }
  if (end_values_.empty()) {
    end_values_.resize(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      end_values_[i] = kinds_[i] == SegmentKind::linear ? values_[i + 1] : values_[i];
    }
  } else if (end_values_.size() != m - 1) {
    throw InputError(fmt::format("expected {} end values, got {}", m - 1, end_values_.size()));
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (kinds_[i] == SegmentKind::constant) end_values_[i] = values_[i];
  }
}

double CandidateH::operator()(double r) const {
  if (!(r > 0.0)) throw InputError(fmt::format("h-functions are evaluated at r > 0 (got {})", r));
  if (r < breakpoints_.front()) return 0.0;
  if (r >= breakpoints_.back()) return values_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  if (kinds_[i] == SegmentKind::constant) return values_[i];
  const double t = (r - breakpoints_[i]) / (breakpoints_[i + 1] - breakpoints_[i]);
  return values_[i] + (end_values_[i] - values_[i]) * t;
}

double CandidateH::left_limit(double r) const {
  if (r <= breakpoints_.front()) return 0.0;
  if (r > breakpoints_.back()) return values_.back();
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin());
  if (j < breakpoints_.size() && breakpoints_[j] == r) return end_values_[j - 1];
  return (*this)(r);
}

std::vector<double> CandidateH::jump_radii() const {
  std::vector<double> out;
  for (double b : breakpoints_) {
    if ((*this)(b) > left_limit(b)) out.push_back(b);
  }
  return out;
}

double CandidateH::slope(int i) const {
  const std::size_t k = static_cast<std::size_t>(i);
  if (kinds_.at(k) == SegmentKind::constant) return 0.0;
  return (end_values_[k] - values_[k]) / (breakpoints_[k + 1] - breakpoints_[k]);
}

CandidateH example_jump_ramp() {
  return CandidateH({1.0, 1.0992}, {0.5, 1.0}, {SegmentKind::linear});
}

double StepH::operator()(double r) const {
  if (radii.empty() || r < radii.front()) return 0.0;
  const auto it = std::upper_bound(radii.begin(), radii.end(), r);
  return values[static_cast<std::size_t>(it - radii.begin()) - 1];
}

std::vector<double> StepH::jumps() const {
  std::vector<double> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = values[k] - (k ? values[k - 1] : 0.0);
  return out;
}

void validate(const StepH& s) {
  if (s.radii.empty()) throw InputError("step function has no jumps");
  if (s.radii.size() != s.values.size()) {
    throw InputError(fmt::format("radii ({}) and values ({}) differ in length", s.radii.size(), s.values.size()));
  }
  if (!(s.radii.front() > 0.0)) throw InputError("jump radii must be positive");
  for (std::size_t k = 0; k < s.radii.size(); ++k) {
    if (k > 0 && !(s.radii[k - 1] < s.radii[k])) {
      throw InputError(fmt::format("jump radii not strictly increasing at index {}", k));
    }
    const double prev = k ? s.values[k - 1] : 0.0;
    if (!(s.values[k] > prev)) throw InputError(fmt::format("step values not increasing at index {}", k));
  }
  if (s.values.back() != 1.0) throw InputError("step function must end at 1");
}

double evaluate(const CandidateH& f, double r) { return f(r); }

double minimal_secant_slope(const CandidateH& f) {
  // A secant of a piecewise linear nondecreasing function is a weighted mean of segment slopes
  // plus nonnegative jump terms, so the infimum is a segment slope or a breakpoint-pair secant.
  const auto& b = f.breakpoints();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < f.segments(); ++i) best = std::min(best, f.slope(i));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      best = std::min(best, (f.left_limit(b[j]) - f(b[i])) / (b[j] - b[i]));
    }
  }
  return std::max(0.0, (f.M() - f.mu()) * best);
}

double grid_secant_slope(const StepH& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < s.radii.size(); ++k) {
    best = std::min(best, (s.values[k] - s.values[k - 1]) / (s.radii[k] - s.radii[k - 1]));
  }
  if (!std::isfinite(best)) return 1.0;
  return (s.M() - s.mu()) * best;
}

double jump_at_mu(const CandidateH& f) { return f(f.mu()); }

std::vector<double> step_grid(const CandidateH& f, int n) {
  if (n < 1) throw InputError(fmt::format("step approximation needs n >= 1 (got {})", n));
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  const double mu = f.mu();
  const double M = f.M();
  for (int k = 0; k < n; ++k) r[k] = mu + (M - mu) * k / n;
  r[n] = M;
  return r;
}

StepH step_approximation(const CandidateH& f, int n) {
  StepH out;
  double last = 0.0;
  for (double r : step_grid(f, n)) {
    const double v = f(r);
    if (v > last) {
      out.radii.push_back(r);
      out.values.push_back(v);
      last = v;
    }
  }
  return out;
}

NecessaryReport necessary_checks(const CandidateH& f, int beurling_grid) {
  NecessaryReport rep;
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  const auto& e = f.end_values();
  const int m = f.segments();

  for (int i = 0; i < m; ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]);
    if (f(b[i]) != v[i] || f(mid) < f(b[i])) rep.right_continuous = false;
  }
  if (!rep.right_continuous) rep.messages.push_back("not right-continuous at a breakpoint");

  for (int i = 0; i < m && rep.monotone; ++i) {
    if (e[i] < v[i] || v[i + 1] < e[i]) {
      rep.monotone = false;
      rep.messages.push_back(fmt::format("not nondecreasing on [{}, {}]", b[i], b[i + 1]));
    }
  }

  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool last = i + 1 == v.size();
    if (v[i] < 0.0 || v[i] > 1.0 || (i < e.size() && (e[i] < 0.0 || e[i] > 1.0))) {
      rep.range_ok = false;
      rep.messages.push_back(fmt::format("value outside [0, 1] at r = {}", b[i]));
      break;
    }
    if (last && v[i] != 1.0) {
      rep.range_ok = false;
      rep.messages.push_back("f does not reach 1 at M");
    }
    if (!last && v[i] >= 1.0) {
      rep.range_ok = false;
      rep.messages.push_back(fmt::format("f reaches 1 before M at r = {}", b[i]));
      break;
    }
  }

  for (int i = 0; i < m; ++i) {
    const bool zero_segment = i == 0 ? (v[0] == 0.0 && e[0] == 0.0) : v[i] == 0.0;
    if (zero_segment || (i > 0 && v[i] <= 0.0)) {
      rep.positive_inside = false;
      rep.messages.push_back(fmt::format("f vanishes on part of ({}, {})", b[i], b[i + 1]));
      break;
    }
  }

  const double mu = f.mu();
  const double ratio = f.M() / mu;
  for (int i = 1; i <= beurling_grid; ++i) {
    const double r = i == beurling_grid ? f.M() : mu * std::pow(ratio, static_cast<double>(i) / beurling_grid);
    if (f(r) < beurling_lower_bound(mu, r)) {
      rep.beurling_ok = false;
      rep.first_violation = r;
      rep.messages.push_back(fmt::format("below the Beurling bound at r = {:.17g}", r));
      break;
    }
  }
  return rep;
}

double inverse(const CandidateH& f, double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw InputError(fmt::format("inverse needs y in [0, 1] (got {})", y));
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  const auto& e = f.end_values();
  for (int i = 0; i < f.segments(); ++i) {
    if (f.kinds()[i] != SegmentKind::linear || !(e[i] > v[i])) {
      throw InputError("inverse needs f strictly increasing on [mu, M]");
    }
  }
  for (int i = 0; i < f.segments(); ++i) {
    if (y <= v[i]) return b[i];
    if (y < e[i]) return b[i] + (b[i + 1] - b[i]) * (y - v[i]) / (e[i] - v[i]);
  }
  return f.M();
}

const char* to_string(SegmentKind kind) { return kind == SegmentKind::constant ? "constant" : "linear"; }

SegmentKind segment_kind_from(const std::string& name) {
  if (name == "constant") return SegmentKind::constant;
  if (name == "linear") return SegmentKind::linear;
  throw InputError(fmt::format("unknown segment kind '{}'", name));
}

}  // namespace hmdf
