#pragma once

// JSON instance files, reports and fixture generation.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsep/separability.hpp"

namespace gsep::io {

using Json = nlohmann::json;

/// Malformed or structurally incomplete input (as opposed to a mathematical
/// violation, which is reported through gsep::Error).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GroupTable group_from_json(const Json& j);
FiniteGroupoid groupoid_from_json(const Json& j);
Json groupoid_to_json(const FiniteGroupoid& g);
Algebra algebra_from_json(const Json& j);
Json algebra_to_json(const Algebra& a);

struct Instance {
  GroupoidPtr groupoid;
  std::vector<MorphismId> subgroupoid;
  GradedRingPtr ring;
  std::size_t max_rank = kDefaultMaxRank;

  WideSubgroupoid delta() const { return WideSubgroupoid::make(groupoid, subgroupoid); }
};

/// Throws ParseError for malformed input and gsep::Error for violations.
Instance load_instance(const Json& j);
Instance load_instance_file(const std::string& path);
/// Canonical form: sorted keys, raw tables, trivial alpha/beta entries omitted.
Json instance_to_json(const Instance& inst);
std::string dump_canonical(const Json& j);

Json violation_to_json(const Violation& v);
Json report_to_json(const SeparabilityReport& r);
/// Accepts {"f","r"}, a list of those, {"certificates": [...]}, a report with
/// "components", or an "all" report with "reports".
std::vector<Certificate> certificates_from_json(const Json& j);

using Params = std::map<std::string, std::string>;
/// Names: matrix, group_ring, twisted, skew_gf, product (alias paper_sec4).
Instance make_fixture(const std::string& name, const Params& params);

}  // namespace gsep::io
