#include "rationing/graph.hpp"

#include <algorithm>
#include <limits>

namespace rationing {

ReservationGraph::ReservationGraph(std::size_t n_agents, std::vector<CategoryId> categories,
                                   std::vector<std::size_t> capacity)
    : present_(n_agents, true),
      categories_(std::move(categories)),
      capacity_(std::move(capacity)),
      adjacency_(n_agents) {
  if (categories_.size() != capacity_.size()) {
    throw ValidationError("reservation graph needs one capacity per category");
  }
}

void ReservationGraph::add_edge(AgentId a, std::size_t slot) {
  if (!present_[idx(a)]) return;
  auto& adj = adjacency_[idx(a)];
  const auto s = static_cast<std::uint32_t>(slot);
  if (std::none_of(adj.begin(), adj.end(), [s](const detail::Edge& e) { return e.slot == s; })) {
    adj.push_back({s, 0});
  }
}

void ReservationGraph::remove_agent(AgentId a) {
  present_[idx(a)] = false;
  adjacency_[idx(a)].clear();
}

std::vector<AgentId> ReservationGraph::left() const {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (present_[i]) out.push_back(agent_id(i));
  }
  return out;
}

bool ReservationGraph::has_edge(AgentId a, CategoryId c) const {
  for (const auto& e : adjacency_[idx(a)]) {
    if (categories_[e.slot] == c) return true;
  }
  return false;
}

std::size_t ReservationGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& adj : adjacency_) m += adj.size();
  return m;
}

std::vector<std::pair<AgentId, CategoryId>> ReservationGraph::edges() const {
  std::vector<std::pair<AgentId, CategoryId>> out;
  for (std::size_t i = 0; i < adjacency_.size(); ++i) {
    for (const auto& e : adjacency_[i]) out.emplace_back(agent_id(i), categories_[e.slot]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReservationGraph reservation_graph(const Instance& inst, std::span<const CategoryId> cats) {
  return reduced_graph(inst, cats, {});
}

ReservationGraph reduced_graph(const Instance& inst, std::span<const CategoryId> cats,
                               std::span<const AgentId> rejected) {
  std::vector<CategoryId> right(cats.begin(), cats.end());
  std::vector<std::size_t> capacity;
  for (CategoryId c : right) capacity.push_back(inst.category(c).quota);
  ReservationGraph g(inst.agent_count(), right, std::move(capacity));
  for (AgentId r : rejected) g.remove_agent(r);

  for (std::size_t slot = 0; slot < right.size(); ++slot) {
    const auto& ranking = inst.category(right[slot]).priority;
    // Best rank among rejected agents; edges strictly below it are dropped.
    auto bound = std::numeric_limits<PriorityRanking::Rank>::max();
    for (AgentId r : rejected) bound = std::min(bound, ranking.rank(r));
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      const AgentId a = agent_id(i);
      if (ranking.eligible(a) && ranking.rank(a) <= bound) g.add_edge(a, slot);
    }
  }
  return g;
}

namespace {

std::vector<std::uint32_t> to_order(std::span<const AgentId> agents) {
  std::vector<std::uint32_t> order;
  order.reserve(agents.size());
  for (AgentId a : agents) order.push_back(static_cast<std::uint32_t>(idx(a)));
  return order;
}

detail::BMatcher solve(const ReservationGraph& g, std::span<const AgentId> agent_order) {
  detail::BMatcher m(g.agent_count(), g.capacities());
  const auto order = to_order(agent_order);
  m.augment(
      order, g.adjacency(), [&g](std::uint32_t a) { return g.present(agent_id(a)); },
      [](std::uint32_t, const detail::Edge&) { return true; });
  return m;
}

std::vector<AgentId> id_order(std::size_t n) {
  std::vector<AgentId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = agent_id(i);
  return order;
}

}  // namespace

std::size_t max_matching_size(const ReservationGraph& g) {
  return solve(g, id_order(g.agent_count())).size();
}

Matching max_matching(const ReservationGraph& g, std::span<const AgentId> agent_order) {
  const auto m = solve(g, agent_order);
  Matching out(g.agent_count());
  for (std::size_t i = 0; i < g.agent_count(); ++i) {
    const auto s = m.slot_of(i);
    if (s != detail::BMatcher::kNone) out.assign(agent_id(i), g.categories()[s]);
  }
  return out;
}

Matching max_matching(const ReservationGraph& g) {
  return max_matching(g, id_order(g.agent_count()));
}

}  // namespace rationing
