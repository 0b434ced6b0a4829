#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/bfengine.hpp"
#include "core/genericity.hpp"

namespace permhom {

using Json = nlohmann::json;

/// One finite graph as string pairs, the unit the verifier replays against.
using GraphPairs = std::vector<std::pair<std::string, std::string>>;
using GraphMap = std::map<std::string, GraphPairs>;

void write_record(std::ostream& out, const Json& rec);
std::vector<Json> read_records(std::istream& in);

/// A witness certificate: every term is defined at alpha over g (with the
/// registry graphs) and avoids alpha_star.
Json witness_record(const std::vector<std::string>& terms, const std::string& alpha,
                    const std::string& alpha_star, const GraphPairs& g,
                    const GraphMap& registry);

/// A met density requirement, with the base function's graph for the
/// alpha_star check.
Json requirement_record(const RequirementRecord& rec, const GraphPairs& r,
                        const GraphMap& registry);

/// Re-checks every checkable record without any construction engine; records
/// of unknown type are skipped. Returns false and fills `failures` on any
/// broken certificate.
bool verify_log(const std::vector<Json>& records, std::vector<std::string>* failures = nullptr);

}  // namespace permhom
