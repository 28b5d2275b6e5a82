#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

#include "rationing/generate.hpp"
#include "rationing/io.hpp"
#include "rationing/model.hpp"

namespace rationing::test {

inline std::string data_path(const std::string& file) { return std::string(RATIONING_DATA_DIR) + "/" + file; }

inline Instance load(const std::string& file) {
  std::ifstream in(data_path(file));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline AgentId agent(const Instance& inst, const std::string& name) { return *inst.find_agent(name); }
inline CategoryId cat(const Instance& inst, const std::string& name) { return *inst.find_category(name); }

inline Matching matching(const Instance& inst,
                         std::initializer_list<std::pair<const char*, const char*>> pairs) {
  Matching m(inst.agent_count());
  for (const auto& [a, c] : pairs) m.assign(agent(inst, a), cat(inst, c));
  return m;
}

/// Brute force over every eligibility-compliant assignment, written without
/// the library's graph or oracle code. Calls `visit` on each one.
inline void brute_force(const Instance& inst, const std::function<void(const Matching&)>& visit) {
  const std::size_t n = inst.agent_count();
  Matching m(n);
  std::vector<std::size_t> load(inst.category_count(), 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == n) {
      visit(m);
      return;
    }
    go(i + 1);
    for (std::size_t c = 0; c < inst.category_count(); ++c) {
      const auto& category = inst.category(category_id(c));
      if (load[c] == category.quota || !category.priority.eligible(agent_id(i))) continue;
      ++load[c];
      m.assign(agent_id(i), category_id(c));
      go(i + 1);
      m.unassign(agent_id(i));
      --load[c];
    }
  };
  go(0);
}

inline std::size_t brute_max_size(const Instance& inst) {
  std::size_t best = 0;
  brute_force(inst, [&best](const Matching& m) { best = std::max(best, m.size()); });
  return best;
}

inline std::size_t brute_max_preferential(const Instance& inst) {
  std::size_t best = 0;
  brute_force(inst, [&](const Matching& m) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      const auto c = m[agent_id(i)];
      if (c && inst.category(*c).kind == CategoryKind::preferential) ++count;
    }
    best = std::max(best, count);
  });
  return best;
}

/// Justified envy straight from the definition, using raw ranks.
inline bool brute_respects_priorities(const Instance& inst, const Matching& m) {
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    const auto c = m[agent_id(i)];
    if (!c) continue;
    const auto& r = inst.category(*c).priority;
    for (std::size_t j = 0; j < inst.agent_count(); ++j) {
      if (!m.matched(agent_id(j)) && r.rank(agent_id(j)) < r.rank(agent_id(i))) return false;
    }
  }
  return true;
}

inline GeneratorOptions small_options(std::uint64_t seed, std::size_t n, std::size_t k, double p,
                                      double t) {
  GeneratorOptions o;
  o.agents = n;
  o.categories = k;
  o.max_quota = 2;
  o.density = p;
  o.tie_prob = t;
  o.seed = seed;
  return o;
}

}  // namespace rationing::test
