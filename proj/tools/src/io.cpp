#include "hmdf_cli/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "hmdf/error.hpp"

namespace hmdf::cli {

namespace {

std::vector<double> doubles(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(fmt::format("missing field '{}'", key));
  const Json& a = j.at(key);
  if (!a.is_array()) throw InputError(fmt::format("field '{}' must be an array", key));
  std::vector<double> out;
  for (const Json& v : a) {
    if (!v.is_number()) throw InputError(fmt::format("field '{}' must hold numbers", key));
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Json to_json(const CircleDomain& d) {
  Json j;
  j["type"] = "circle_domain";
  j["radii"] = d.radii();
  j["psi"] = d.psis();
  return j;
}

Json to_json(const BlockedCircleDomain& d) {
  Json j = to_json(d.base);
  j["type"] = "blocked_circle_domain";
  j["phi"] = d.gate_angles;
  return j;
}

Json to_json(const CandidateH& f) {
  Json j;
  j["type"] = "h_function";
  j["breakpoints"] = f.breakpoints();
  j["values"] = f.values();
  Json kinds = Json::array();
  for (SegmentKind k : f.kinds()) kinds.push_back(to_string(k));
  j["kinds"] = kinds;
  if (!f.end_values().empty()) j["end_values"] = f.end_values();
  return j;
}

Json to_json(const StepH& s) {
  Json j;
  j["type"] = "step_function";
  j["radii"] = s.radii;
  j["values"] = s.values;
  return j;
}

CircleDomain circle_domain_from_json(const Json& j) {
  const std::vector<double> radii = doubles(j, "radii");
  const std::vector<double> psi = doubles(j, "psi");
  if (radii.size() != psi.size()) {
    throw InputError(fmt::format("radii ({}) and psi ({}) differ in length", radii.size(), psi.size()));
  }
  if (radii.empty()) throw InputError("domain has no arcs");
  CircleDomain d = CircleDomain::from(radii, psi);
  const Diagnostics diag = validate(d);
  if (!diag.ok()) throw InputError("invalid circle domain: " + diag.violations.front());
  return d;
}

BlockedCircleDomain blocked_domain_from_json(const Json& j) {
  BlockedCircleDomain d{circle_domain_from_json(j), doubles(j, "phi")};
  if (static_cast<int>(d.gate_angles.size()) != d.base.n()) {
    throw InputError(fmt::format("phi needs {} entries (got {})", d.base.n(), d.gate_angles.size()));
  }
  const Diagnostics diag = validate(d);
  if (!diag.ok()) throw InputError("invalid blocked domain: " + diag.violations.front());
  return d;
}

CandidateH function_from_json(const Json& j) {
  std::vector<SegmentKind> kinds;
  if (!j.contains("kinds") || !j.at("kinds").is_array()) throw InputError("missing array field 'kinds'");
  for (const Json& k : j.at("kinds")) {
    if (!k.is_string()) throw InputError("field 'kinds' must hold strings");
    kinds.push_back(segment_kind_from(k.get<std::string>()));
  }
  std::vector<double> end_values;
  if (j.contains("end_values")) end_values = doubles(j, "end_values");
  return CandidateH(doubles(j, "breakpoints"), doubles(j, "values"), std::move(kinds), std::move(end_values));
}

StepH step_from_json(const Json& j) {
  StepH s{doubles(j, "radii"), doubles(j, "values")};
  validate(s);
  return s;
}

Document document_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("document must be a JSON object");
  if (j.contains("breakpoints")) return function_from_json(j);
  if (j.contains("values")) return step_from_json(j);
  if (j.contains("phi")) return blocked_domain_from_json(j);
  if (j.contains("psi")) return circle_domain_from_json(j);
  throw InputError("unrecognized document: expected breakpoints, values, phi or psi");
}

Document read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path));
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError(fmt::format("{}: {}", path, e.what()));
  }
  return document_from_json(j);
}

std::vector<double> parse_radii(const std::string& spec) {
  const auto number = [&spec](const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw InputError(fmt::format("bad radius '{}' in '{}'", tok, spec));
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InputError(fmt::format("radii spec '{}' must be a:b:count", spec));
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double c = number(parts[2]);
    if (c < 1 || c != static_cast<int>(c)) throw InputError(fmt::format("bad count in '{}'", spec));
    const int count = static_cast<int>(c);
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw InputError("no radii given");
  for (double r : out) {
    if (!(r > 0.0)) throw InputError(fmt::format("radius {} must be positive", r));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size() || v < 1) throw InputError(fmt::format("bad entry '{}' in '{}'", p, spec));
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_h_csv(std::ostream& os, const HFunctionTable& t) {
  os << "r,h,std_error,method\n";
  for (std::size_t i = 0; i < t.radii.size(); ++i) {
    const MeasureEstimate& e = t.estimates[i];
    os << format_double(t.radii[i]) << ',' << format_double(e.value) << ',' << format_double(e.std_error) << ','
       << to_string(e.method) << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path));
  out << text;
  if (!out) throw InputError(fmt::format("write to '{}' failed", path));
}

}  // namespace hmdf::cli
