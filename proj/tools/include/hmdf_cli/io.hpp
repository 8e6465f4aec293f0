#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hmdf/geometry.hpp"
#include "hmdf/hfunction.hpp"
#include "hmdf/potential.hpp"

namespace hmdf::cli {

using Json = nlohmann::ordered_json;

/// Any document the tools read: a circle domain, a blocked domain, a candidate function, or a step function.
using Document = std::variant<CircleDomain, BlockedCircleDomain, CandidateH, StepH>;

Json to_json(const CircleDomain& d);
Json to_json(const BlockedCircleDomain& d);
Json to_json(const CandidateH& f);
Json to_json(const StepH& s);

/// Dispatches on the fields present: breakpoints -> function, values -> step, phi -> blocked.
Document document_from_json(const Json& j);
Document read_document(const std::string& path);

CircleDomain circle_domain_from_json(const Json& j);
BlockedCircleDomain blocked_domain_from_json(const Json& j);
CandidateH function_from_json(const Json& j);
StepH step_from_json(const Json& j);

/// "a:b:count" (count equally spaced values, both ends included) or a comma-separated list.
std::vector<double> parse_radii(const std::string& spec);
/// Comma-separated positive integers.
std::vector<int> parse_int_list(const std::string& spec);

/// 17 significant digits.
std::string format_double(double v);

/// Header r,h,std_error,method and one row per tabulated radius.
void write_h_csv(std::ostream& os, const HFunctionTable& t);

void write_text(const std::string& path, const std::string& text);

}  // namespace hmdf::cli
