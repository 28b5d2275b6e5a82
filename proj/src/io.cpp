#include "rationing/io.hpp"

#include <type_traits>

namespace rationing {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("syntax error: ") + e.what());
  }
}

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw SyntaxError(std::string("syntax error: missing field '") + key + "'");
  }
  return doc.at(key);
}

std::size_t unsigned_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_unsigned()) {
    throw SyntaxError(std::string("syntax error: '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string string_value(const Json& v, const char* what) {
  if (!v.is_string()) throw SyntaxError(std::string("syntax error: ") + what + " must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_array()) throw SyntaxError(std::string("syntax error: '") + key + "' must be a list");
  return v;
}

AgentId agent_by_name(const Instance& inst, const std::string& name) {
  const auto a = inst.find_agent(name);
  if (!a) throw ValidationError("unknown agent '" + name + "'");
  return *a;
}

CategoryId category_by_name(const Instance& inst, const std::string& name) {
  const auto c = inst.find_category(name);
  if (!c) throw ValidationError("unknown category '" + name + "'");
  return *c;
}

}  // namespace

Instance instance_from_json(const Json& doc) {
  std::vector<std::string> names;
  for (const auto& v : array_field(doc, "agents")) names.push_back(string_value(v, "agent name"));
  const auto lookup = [&names](const std::string& name) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return agent_id(i);
    }
    throw ValidationError("unknown agent '" + name + "'");
  };

  std::vector<AgentId> baseline;
  for (const auto& v : array_field(doc, "baseline")) {
    baseline.push_back(lookup(string_value(v, "baseline entry")));
  }

  std::vector<Category> cats;
  for (const auto& c : array_field(doc, "categories")) {
    Category cat;
    cat.name = string_value(field(c, "name"), "category name");
    cat.quota = unsigned_field(c, "quota");
    const std::string kind = c.contains("kind") ? string_value(c.at("kind"), "kind") : "preferential";
    if (kind == "preferential") {
      cat.kind = CategoryKind::preferential;
    } else if (kind == "unreserved" || kind == "unreserved_last") {
      cat.kind = CategoryKind::unreserved_last;
    } else if (kind == "unreserved_first") {
      cat.kind = CategoryKind::unreserved_first;
    } else {
      throw SyntaxError("syntax error: unknown category kind '" + kind + "'");
    }

    if (cat.kind != CategoryKind::preferential && !c.contains("tiers")) {
      cat.priority = PriorityRanking::strict(names.size(), baseline);
    } else {
      std::vector<std::vector<AgentId>> tiers;
      for (const auto& tier : array_field(c, "tiers")) {
        if (!tier.is_array()) throw SyntaxError("syntax error: each tier must be a list");
        auto& out = tiers.emplace_back();
        for (const auto& v : tier) out.push_back(lookup(string_value(v, "tier entry")));
      }
      const std::size_t cutoff = c.contains("cutoff") ? unsigned_field(c, "cutoff") : tiers.size();
      cat.priority = PriorityRanking(names.size(), std::move(tiers), cutoff);
    }
    cats.push_back(std::move(cat));
  }

  Instance inst(std::move(names), std::move(cats), std::move(baseline));
  if (doc.contains("unreserved_split") && !doc.at("unreserved_split").is_null()) {
    try {
      inst = split_unreserved(inst, split_from_json(doc.at("unreserved_split")));
    } catch (const PreconditionError& e) {
      throw ValidationError(e.what());
    }
  }
  return inst;
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["agents"] = inst.agent_names();
  Json baseline = Json::array();
  for (AgentId a : inst.baseline()) baseline.push_back(inst.agent_name(a));
  doc["baseline"] = std::move(baseline);
  Json cats = Json::array();
  for (const auto& cat : inst.categories()) {
    Json c;
    c["name"] = cat.name;
    c["quota"] = cat.quota;
    switch (cat.kind) {
      case CategoryKind::preferential:
        c["kind"] = "preferential";
        break;
      case CategoryKind::unreserved_first:
        c["kind"] = "unreserved_first";
        break;
      case CategoryKind::unreserved_last:
        c["kind"] = "unreserved";
        break;
    }
    Json tiers = Json::array();
    for (const auto& tier : cat.priority.tiers()) {
      Json t = Json::array();
      for (AgentId a : tier) t.push_back(inst.agent_name(a));
      tiers.push_back(std::move(t));
    }
    c["tiers"] = std::move(tiers);
    c["cutoff"] = cat.priority.cutoff();
    cats.push_back(std::move(c));
  }
  doc["categories"] = std::move(cats);
  return doc;
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2); }

Matching matching_from_json(const Instance& inst, const Json& doc) {
  const Json& map = doc.is_object() && doc.contains("matching") ? doc.at("matching") : doc;
  if (!map.is_object()) throw SyntaxError("syntax error: matching must be an object of agent: category");
  Matching m(inst.agent_count());
  for (const auto& [agent, category] : map.items()) {
    if (category.is_null()) continue;
    m.assign(agent_by_name(inst, agent), category_by_name(inst, string_value(category, "category")));
  }
  m.validate(inst);
  return m;
}

Json matching_to_json(const Instance& inst, const Matching& m) {
  Json map = Json::object();
  for (AgentId a : inst.baseline()) {
    if (const auto c = m[a]) map[inst.agent_name(a)] = inst.category(*c).name;
  }
  return map;
}

UnreservedSplit split_from_json(const Json& doc) {
  return {unsigned_field(doc, "first"), unsigned_field(doc, "last")};
}

Json split_to_json(UnreservedSplit split) {
  Json doc;
  doc["first"] = split.first;
  doc["last"] = split.last;
  return doc;
}

Preferences preferences_from_json(const Instance& inst, const Json& doc) {
  if (!doc.is_object()) throw SyntaxError("syntax error: preferences must be an object");
  Preferences prefs(inst.agent_count());
  for (const auto& [agent, list] : doc.items()) {
    if (!list.is_array()) throw SyntaxError("syntax error: preference list must be a list");
    auto& out = prefs[idx(agent_by_name(inst, agent))];
    for (const auto& v : list) out.push_back(category_by_name(inst, string_value(v, "category")));
  }
  return prefs;
}

Json report_to_json(const Instance& inst, const AxiomReport& report) {
  const auto agent = [&inst](AgentId a) { return inst.agent_name(a); };
  const auto category = [&inst](CategoryId c) { return inst.category(c).name; };

  Json doc;
  doc["axiom"] = report.axiom;
  doc["holds"] = report.holds;
  doc["witness_count"] = report.witness_count;
  if (report.manipulations_tested) {
    doc["manipulations_tested"] = *report.manipulations_tested;
    doc["scope"] = "within tested manipulation space";
  }
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json j;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, IneligiblePair>) {
            j["type"] = "ineligible";
            j["agent"] = agent(v.agent);
            j["category"] = category(v.category);
          } else if constexpr (std::is_same_v<T, Envy>) {
            j["type"] = "envy";
            j["envier"] = agent(v.envier);
            j["envied"] = agent(v.envied);
            j["category"] = category(v.category);
          } else if constexpr (std::is_same_v<T, WastedUnit>) {
            j["type"] = "wasted";
            j["agent"] = agent(v.agent);
            j["category"] = category(v.category);
          } else if constexpr (std::is_same_v<T, SizeGap>) {
            j["type"] = "size_gap";
            j["found"] = v.found;
            j["optimum"] = v.optimum;
          } else if constexpr (std::is_same_v<T, OrderViolation>) {
            j["type"] = "order";
            j["clause"] = v.clause;
            j["higher"] = agent(v.higher);
            j["lower"] = agent(v.lower);
            j["higher_category"] = category(v.higher_category);
            j["lower_category"] = category(v.lower_category);
          } else {
            j["type"] = "manipulation";
            j["manipulator"] = agent(v.manipulator);
            j["instance_index"] = v.instance_index;
            j["affected"] = agent(v.affected);
            j["matched_before"] = v.matched_before;
            j["matched_after"] = v.matched_after;
          }
        },
        w);
    witnesses.push_back(std::move(j));
  }
  doc["witnesses"] = std::move(witnesses);
  return doc;
}

Json trace_to_json(const Instance& inst, const RrTrace& trace) {
  Json doc;
  doc["ms_total"] = trace.ms_total;
  Json rejected = Json::array();
  for (AgentId a : trace.rejected) rejected.push_back(inst.agent_name(a));
  doc["rejected"] = std::move(rejected);
  Json decisions = Json::array();
  for (const auto& d : trace.decisions) {
    Json j;
    j["agent"] = inst.agent_name(d.agent);
    j["rejected"] = d.rejected;
    j["ms"] = d.ms;
    decisions.push_back(std::move(j));
  }
  doc["decisions"] = std::move(decisions);
  return doc;
}

}  // namespace rationing
