#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rationing/detail/bmatcher.hpp"
#include "rationing/model.hpp"

namespace rationing {

/// Bipartite eligibility graph between agents and capacitated categories.
///
/// Right vertices are addressed by slot (position in `categories()`); edges
/// are stored per agent. Agents outside the left set keep empty adjacency.
class ReservationGraph {
 public:
  ReservationGraph(std::size_t n_agents, std::vector<CategoryId> categories,
                   std::vector<std::size_t> capacity);

  void add_edge(AgentId a, std::size_t slot);
  /// Removes the agent and its edges from the left side.
  void remove_agent(AgentId a);

  std::size_t agent_count() const { return present_.size(); }
  bool present(AgentId a) const { return present_[idx(a)]; }
  std::vector<AgentId> left() const;
  const std::vector<CategoryId>& categories() const { return categories_; }
  const std::vector<std::size_t>& capacities() const { return capacity_; }
  const detail::Adjacency& adjacency() const { return adjacency_; }

  bool has_edge(AgentId a, CategoryId c) const;
  std::size_t edge_count() const;
  /// Sorted (agent, category) pairs.
  std::vector<std::pair<AgentId, CategoryId>> edges() const;

 private:
  std::vector<bool> present_;
  std::vector<CategoryId> categories_;
  std::vector<std::size_t> capacity_;
  detail::Adjacency adjacency_;
};

/// Edges are exactly the eligibility pairs over the chosen categories.
ReservationGraph reservation_graph(const Instance& inst, std::span<const CategoryId> cats);

/// Drops `rejected` agents and every edge (j, c) with some rejected i ranked
/// strictly above j in c.
ReservationGraph reduced_graph(const Instance& inst, std::span<const CategoryId> cats,
                               std::span<const AgentId> rejected);

std::size_t max_matching_size(const ReservationGraph& g);

/// Maximum-size matching, deterministic: greedy over `agent_order` and
/// categories in slot order, then augmenting paths from free agents in
/// `agent_order`.
Matching max_matching(const ReservationGraph& g, std::span<const AgentId> agent_order);

/// Same with agents in id order.
Matching max_matching(const ReservationGraph& g);

}  // namespace rationing
