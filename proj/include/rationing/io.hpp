#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "rationing/axioms.hpp"
#include "rationing/model.hpp"
#include "rationing/rules.hpp"

namespace rationing {

using Json = nlohmann::ordered_json;

/// Text that is not a well-formed document.
class SyntaxError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Parses an instance document:
///
///   { "agents": [names], "baseline": [names, highest first],
///     "categories": [ { "name", "quota", "kind", "tiers": [[names]], "cutoff" } ],
///     "unreserved_split": { "first", "last" } }   (optional)
///
/// `kind` is "preferential", "unreserved" (processed last), "unreserved_first"
/// or "unreserved_last". Unreserved categories may omit tiers and cutoff.
/// When unreserved_split is given the pool is split on load.
Instance parse_instance(std::string_view text);
Instance instance_from_json(const Json& doc);

Json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);

/// Accepts either {"matching": {agent: category}} or the bare map.
Matching matching_from_json(const Instance& inst, const Json& doc);
Json matching_to_json(const Instance& inst, const Matching& m);

UnreservedSplit split_from_json(const Json& doc);
Json split_to_json(UnreservedSplit split);

/// {agent: [categories, most preferred first]}; omitted agents list nothing.
Preferences preferences_from_json(const Instance& inst, const Json& doc);

Json report_to_json(const Instance& inst, const AxiomReport& report);
Json trace_to_json(const Instance& inst, const RrTrace& trace);

/// Parses text as JSON, mapping parse failures to SyntaxError.
Json parse_json(std::string_view text);

}  // namespace rationing
