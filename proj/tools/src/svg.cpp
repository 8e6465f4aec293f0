#include "hmdf_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace hmdf::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSize = 600.0;
constexpr double kCenter = 300.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(const std::string& title) {
  std::string s = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0:.0f}\" height=\"{0:.0f}\" viewBox=\"0 0 {0:.0f} {0:.0f}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kSize);
  if (!title.empty()) {
    s += fmt::format("<text x=\"{:.0f}\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
                     kCenter, escape(title));
  }
  return s;
}

struct Polar {
  double scale;
  double x(double r, double t) const { return kCenter + scale * r * std::cos(t); }
  double y(double r, double t) const { return kCenter - scale * r * std::sin(t); }
};

std::string arcs(const CircleDomain& d, const Polar& P) {
  std::string s = "<g class=\"arcs\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (int k = 0; k <= d.n(); ++k) {
    const double r = d.radius(k);
    const double psi = d.psi(k);
    if (psi >= kPi) {
      s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\"/>\n", kCenter, kCenter, P.scale * r);
    } else if (psi <= 0.0) {
      s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"1.5\" fill=\"black\"/>\n", P.x(r, 0.0), P.y(r, 0.0));
    } else {
      s += fmt::format("<path d=\"M {:.3f} {:.3f} A {:.3f} {:.3f} 0 {} 0 {:.3f} {:.3f}\"/>\n", P.x(r, -psi),
                       P.y(r, -psi), P.scale * r, P.scale * r, 2.0 * psi > kPi ? 1 : 0, P.x(r, psi), P.y(r, psi));
    }
  }
  return s + "</g>\n";
}

std::string base_point() {
  return fmt::format("<circle class=\"base\" cx=\"{0:.3f}\" cy=\"{0:.3f}\" r=\"3\" fill=\"red\"/>\n", kCenter);
}

}  // namespace

std::string render_domain(const CircleDomain& d, const std::string& title) {
  const Polar P{270.0 / d.M()};
  return header(title) + arcs(d, P) + base_point() + "</svg>\n";
}

std::string render_domain(const BlockedCircleDomain& d, const std::string& title) {
  const Polar P{270.0 / d.base.M()};
  std::string s = header(title) + arcs(d.base, P);
  if (!d.gate_angles.empty()) {
    s += "<g class=\"gates\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\">\n";
    for (int k = 0; k < d.base.n(); ++k) {
      const double r0 = d.base.radius(k);
      const double r1 = d.base.radius(k + 1);
      const double phi = d.gate_angles[k];
      for (double t : phi > 0.0 ? std::vector<double>{phi, -phi} : std::vector<double>{0.0}) {
        s += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", P.x(r0, t), P.y(r0, t),
                         P.x(r1, t), P.y(r1, t));
      }
    }
    s += "</g>\n";
  }
  return s + base_point() + "</svg>\n";
}

std::string render_plot(const std::vector<Series>& series, double x0, double x1, const std::string& title,
                        const std::string& xlabel, const std::string& ylabel) {
  const double left = 60.0, right = 570.0, top = 40.0, bottom = 540.0;
  const double span = x1 > x0 ? x1 - x0 : 1.0;
  const auto X = [&](double x) { return left + (right - left) * (x - x0) / span; };
  const auto Y = [&](double y) { return bottom - (bottom - top) * y / 1.05; };

  std::string s = header(title);
  s += fmt::format("<g stroke=\"black\" fill=\"none\"><rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\"/></g>\n",
                   left, top, right - left, bottom - top);
  s += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + span * i / 4.0;
    const double y = 0.25 * i;
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", X(x), bottom + 16.0, x);
    s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.2f}</text>\n", left - 6.0, Y(y) + 4.0, y);
  }
  s += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", 0.5 * (left + right),
                   bottom + 40.0, escape(xlabel));
  s += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                   0.5 * (top + bottom), 0.5 * (top + bottom), escape(ylabel));
  s += "</g>\n";

  double legend_y = top + 16.0;
  for (const Series& ser : series) {
    std::string pts;
    for (const auto& [x, y] : ser.points) pts += fmt::format("{}{:.3f},{:.3f}", pts.empty() ? "" : " ", X(x), Y(y));
    if (ser.markers) {
      s += fmt::format("<g fill=\"{}\" stroke=\"{}\">\n", ser.color, ser.color);
      for (std::size_t i = 0; i < ser.points.size(); ++i) {
        const auto [x, y] = ser.points[i];
        s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"2.5\"/>\n", X(x), Y(y));
        if (i < ser.errors.size() && ser.errors[i] > 0.0) {
          s += fmt::format("<line x1=\"{0:.3f}\" y1=\"{1:.3f}\" x2=\"{0:.3f}\" y2=\"{2:.3f}\"/>\n", X(x),
                           Y(y - ser.errors[i]), Y(y + ser.errors[i]));
        }
      }
      s += "</g>\n";
    } else {
      s += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", ser.color, pts);
    }
    if (!ser.label.empty()) {
      s += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{}\">{}</text>\n",
          left + 10.0, legend_y, ser.color, escape(ser.label));
      legend_y += 16.0;
    }
  }
  return s + "</svg>\n";
}

Series function_series(const CandidateH& f, const std::string& color, double x0, double x1) {
  Series s{"f", color, {}, {}, false};
  const std::vector<double> jumps = f.jump_radii();
  const int samples = 400;
  std::vector<double> xs;
  for (int i = 0; i <= samples; ++i) xs.push_back(x0 + (x1 - x0) * i / samples);
  for (double b : f.breakpoints()) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    if (x < x0 || x > x1) continue;
    if (std::find(jumps.begin(), jumps.end(), x) != jumps.end()) s.points.emplace_back(x, f.left_limit(x));
    s.points.emplace_back(x, f(x));
  }
  return s;
}

Series step_series(const StepH& st, const std::string& color, double x0, double x1) {
  Series s{"step", color, {}, {}, false};
  double prev = 0.0;
  s.points.emplace_back(x0, 0.0);
  for (std::size_t k = 0; k < st.radii.size(); ++k) {
    s.points.emplace_back(st.radii[k], prev);
    s.points.emplace_back(st.radii[k], st.values[k]);
    prev = st.values[k];
  }
  s.points.emplace_back(x1, prev);
  return s;
}

std::string render_function(const CandidateH& f, const std::string& title) {
  const double pad = 0.1 * (f.M() - f.mu());
  const double x0 = std::max(0.0, f.mu() - pad);
  const double x1 = f.M() + pad;
  return render_plot({function_series(f, "black", x0, x1)}, x0, x1, title, "r", "h(r)");
}

std::string render_step(const StepH& s, const std::string& title) {
  const double pad = 0.1 * std::max(s.M() - s.mu(), 0.1 * s.M());
  const double x0 = std::max(0.0, s.mu() - pad);
  const double x1 = s.M() + pad;
  return render_plot({step_series(s, "black", x0, x1)}, x0, x1, title, "r", "h(r)");
}

std::string render_profile(const std::vector<std::pair<double, double>>& profile, const std::string& title) {
  double rmax = 0.0;
  for (const auto& p : profile) rmax = std::max(rmax, p.second);
  const Polar P{270.0 / (rmax > 0.0 ? rmax : 1.0)};
  std::string pts;
  for (const auto& [t, r] : profile) pts += fmt::format("{}{:.3f},{:.3f}", pts.empty() ? "" : " ", P.x(r, t), P.y(r, t));
  return header(title) +
         fmt::format("<polygon class=\"profile\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                     pts) +
         base_point() + "</svg>\n";
}

}  // namespace hmdf::cli
