#include "rationing/oracle.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rationing/axioms.hpp"

namespace rationing {

void for_each_matching(const ReservationGraph& g, const std::function<void(const Matching&)>& visit,
                       const OracleLimits& limits) {
  const std::size_t n = g.agent_count();
  if (n > limits.max_agents) {
    throw OracleBoundError("enumeration limited to " + std::to_string(limits.max_agents) +
                           " agents, instance has " + std::to_string(n));
  }
  Matching current(n);
  std::vector<std::size_t> load(g.categories().size(), 0);
  std::size_t emitted = 0;

  const std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (i == n) {
      if (++emitted > limits.max_matchings) {
        throw OracleBoundError("more than " + std::to_string(limits.max_matchings) + " matchings");
      }
      visit(current);
      return;
    }
    const AgentId a = agent_id(i);
    std::vector<std::uint32_t> slots;
    for (const auto& e : g.adjacency()[i]) slots.push_back(e.slot);
    std::sort(slots.begin(), slots.end());
    for (std::uint32_t s : slots) {
      if (load[s] >= g.capacities()[s]) continue;
      ++load[s];
      current.assign(a, g.categories()[s]);
      descend(i + 1);
      current.unassign(a);
      --load[s];
    }
    descend(i + 1);
  };
  descend(0);
}

std::vector<Matching> enumerate_matchings(const Instance& inst, const OracleLimits& limits) {
  std::vector<Matching> out;
  const auto cats = inst.all_categories();
  for_each_matching(reservation_graph(inst, cats), [&out](const Matching& m) { out.push_back(m); },
                    limits);
  return out;
}

MatchingSet axiom_satisfying_set(const Instance& inst, const OracleLimits& limits) {
  const auto all = enumerate_matchings(inst, limits);
  std::size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.size());
  MatchingSet out;
  for (const auto& m : all) {
    if (m.size() == best && check_respect_priorities(inst, m).holds) out.insert(m);
  }
  return out;
}

MatchingSet rr_outcome_set(const Instance& inst, const OracleLimits& limits,
                           const RrOptions& rr_options) {
  const std::size_t n = inst.agent_count();
  if (inst.has_unreserved()) {
    throw PreconditionError("rr outcome enumeration needs an instance without unreserved categories");
  }
  if (n > limits.max_ordering_agents) {
    throw OracleBoundError("baseline enumeration limited to " +
                           std::to_string(limits.max_ordering_agents) + " agents, instance has " +
                           std::to_string(n));
  }

  const auto cats = inst.all_categories();
  std::vector<AgentId> baseline(n);
  for (std::size_t i = 0; i < n; ++i) baseline[i] = agent_id(i);

  // Many baselines share a rejected set; each reduced graph is expanded once.
  std::set<std::vector<AgentId>> seen;
  MatchingSet out;
  do {
    const auto result = rr(inst.with_baseline(baseline), cats, rr_options);
    if (!seen.insert(result.trace.rejected).second) continue;
    const auto g = reduced_graph(inst, cats, result.trace.rejected);
    const std::size_t target = max_matching_size(g);
    for_each_matching(
        g,
        [&](const Matching& m) {
          if (m.size() == target) out.insert(m);
        },
        limits);
  } while (std::next_permutation(baseline.begin(), baseline.end()));
  return out;
}

CharacterizationReport verify_characterization(const Instance& inst, const OracleLimits& limits,
                                               const RrOptions& rr_options) {
  const auto expected = axiom_satisfying_set(inst, limits);
  const auto produced = rr_outcome_set(inst, limits, rr_options);
  CharacterizationReport report;
  std::set_difference(expected.begin(), expected.end(), produced.begin(), produced.end(),
                      std::inserter(report.missing_from_rr, report.missing_from_rr.end()));
  std::set_difference(produced.begin(), produced.end(), expected.begin(), expected.end(),
                      std::inserter(report.extra_in_rr, report.extra_in_rr.end()));
  report.holds = report.missing_from_rr.empty() && report.extra_in_rr.empty();
  return report;
}

}  // namespace rationing
