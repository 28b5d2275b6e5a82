#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace rationing::detail {

/// Adjacency entry: a category slot plus the agent's rank in that category.
struct Edge {
  std::uint32_t slot = 0;
  std::uint32_t rank = 0;
};

using Adjacency = std::vector<std::vector<Edge>>;

/// Capacitated bipartite matching state with layered augmenting-path search.
///
/// Left vertices (agents) take at most one slot, slot s at most capacity[s]
/// agents. The edge set is supplied per call as an adjacency plus two
/// filters, so callers can shrink the graph between calls and keep the
/// current matching: `present(a)` selects agents, `allowed(a, e)` edges.
/// Pairs that fail the filters must be removed by the caller first.
class BMatcher {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  BMatcher(std::size_t n_agents, std::vector<std::size_t> capacity)
      : slot_of_(n_agents, kNone), capacity_(std::move(capacity)), members_(capacity_.size()) {}

  std::size_t size() const { return size_; }
  std::uint32_t slot_of(std::size_t agent) const { return slot_of_[agent]; }
  const std::vector<std::uint32_t>& members(std::size_t slot) const { return members_[slot]; }
  std::size_t capacity(std::size_t slot) const { return capacity_[slot]; }

  void unassign(std::size_t agent) {
    const std::uint32_t s = slot_of_[agent];
    if (s == kNone) return;
    auto& m = members_[s];
    auto it = std::find(m.begin(), m.end(), static_cast<std::uint32_t>(agent));
    *it = m.back();
    m.pop_back();
    slot_of_[agent] = kNone;
    --size_;
  }

  void assign(std::size_t agent, std::uint32_t slot) {
    unassign(agent);
    members_[slot].push_back(static_cast<std::uint32_t>(agent));
    slot_of_[agent] = slot;
    ++size_;
  }

  /// Greedy fill followed by augmenting phases until the matching reaches
  /// `target` or is maximum. Agents are scanned in `order` in both stages.
  template <class Present, class Allowed>
  std::size_t augment(std::span<const std::uint32_t> order, const Adjacency& adj,
                      const Present& present, const Allowed& allowed,
                      std::size_t target = std::numeric_limits<std::size_t>::max()) {
    for (std::uint32_t a : order) {
      if (size_ >= target) return size_;
      if (!present(a) || slot_of_[a] != kNone) continue;
      for (const Edge& e : adj[a]) {
        if (allowed(a, e) && members_[e.slot].size() < capacity_[e.slot]) {
          assign(a, e.slot);
          break;
        }
      }
    }

    const std::size_t n = slot_of_.size();
    while (size_ < target) {
      dist_.assign(n, kInf);
      queue_.clear();
      for (std::uint32_t a : order) {
        if (present(a) && slot_of_[a] == kNone) {
          dist_[a] = 0;
          queue_.push_back(a);
        }
      }
      if (queue_.empty()) break;

      slot_layer_.assign(capacity_.size(), kInf);
      std::uint32_t limit = kInf;
      for (std::size_t head = 0; head < queue_.size(); ++head) {
        const std::uint32_t a = queue_[head];
        if (dist_[a] > limit) break;
        for (const Edge& e : adj[a]) {
          if (e.slot == slot_of_[a] || !allowed(a, e)) continue;
          if (members_[e.slot].size() < capacity_[e.slot]) {
            limit = std::min(limit, dist_[a]);
          } else if (slot_layer_[e.slot] == kInf) {
            slot_layer_[e.slot] = dist_[a];
            for (std::uint32_t b : members_[e.slot]) {
              if (dist_[b] == kInf) {
                dist_[b] = dist_[a] + 1;
                queue_.push_back(b);
              }
            }
          }
        }
      }
      if (limit == kInf) break;

      slot_dead_.assign(capacity_.size(), false);
      bool progressed = false;
      for (std::uint32_t a : order) {
        if (size_ >= target) break;
        if (dist_[a] == 0 && slot_of_[a] == kNone && present(a)) {
          if (search(a, adj, allowed)) progressed = true;
        }
      }
      if (!progressed) break;
    }
    return size_;
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  template <class Allowed>
  bool search(std::uint32_t a, const Adjacency& adj, const Allowed& allowed) {
    const bool was_free = slot_of_[a] == kNone;
    for (const Edge& e : adj[a]) {
      if (e.slot == slot_of_[a] || slot_dead_[e.slot] || !allowed(a, e)) continue;
      if (members_[e.slot].size() < capacity_[e.slot]) {
        move(a, e.slot, was_free);
        return true;
      }
      // A full slot is only expanded from the layer that reached it.
      if (slot_layer_[e.slot] != dist_[a]) continue;
      auto& m = members_[e.slot];
      for (std::size_t k = 0; k < m.size(); ++k) {
        const std::uint32_t b = m[k];
        if (dist_[b] != dist_[a] + 1) continue;
        if (search(b, adj, allowed)) {
          move(a, e.slot, was_free);
          return true;
        }
      }
      slot_dead_[e.slot] = true;
    }
    dist_[a] = kInf;
    return false;
  }

  // Re-seat `a`; the matching grows only when the path started at a free agent.
  void move(std::uint32_t a, std::uint32_t slot, bool grows) {
    if (slot_of_[a] != kNone) {
      auto& old = members_[slot_of_[a]];
      auto it = std::find(old.begin(), old.end(), a);
      *it = old.back();
      old.pop_back();
    }
    members_[slot].push_back(a);
    slot_of_[a] = slot;
    if (grows) ++size_;
  }

  std::vector<std::uint32_t> slot_of_;
  std::vector<std::size_t> capacity_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::size_t size_ = 0;

  std::vector<std::uint32_t> dist_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> slot_layer_;
  std::vector<bool> slot_dead_;
};

}  // namespace rationing::detail
