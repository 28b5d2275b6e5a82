#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rationing {

enum class AgentId : std::uint32_t {};
enum class CategoryId : std::uint32_t {};

constexpr std::size_t idx(AgentId a) { return static_cast<std::size_t>(a); }
constexpr std::size_t idx(CategoryId c) { return static_cast<std::size_t>(c); }
constexpr AgentId agent_id(std::size_t i) { return static_cast<AgentId>(i); }
constexpr CategoryId category_id(std::size_t c) { return static_cast<CategoryId>(c); }

/// Malformed or inconsistent input (bad document, unknown names, broken invariants).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rule was invoked on an instance outside the domain it is defined on.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CategoryKind { preferential, unreserved_first, unreserved_last };

std::string_view to_string(CategoryKind kind);

/// Weak ranking over agents with the empty set placed at `cutoff`.
///
/// Agents in tiers before the cutoff are eligible. Agents in tiers at or after
/// the cutoff sit strictly below the empty set. Agents that appear in no tier
/// are tied with the empty set, hence ineligible and mutually tied.
class PriorityRanking {
 public:
  using Rank = std::uint32_t;

  PriorityRanking() = default;
  PriorityRanking(std::size_t n_agents, std::vector<std::vector<AgentId>> tiers, std::size_t cutoff);

  /// Singleton tiers following `order`, every listed agent eligible.
  static PriorityRanking strict(std::size_t n_agents, const std::vector<AgentId>& order);

  const std::vector<std::vector<AgentId>>& tiers() const { return tiers_; }
  std::size_t cutoff() const { return cutoff_; }
  std::size_t agent_count() const { return rank_.size(); }

  /// Position of the empty set; smaller ranks mean higher priority.
  Rank empty_rank() const { return static_cast<Rank>(cutoff_); }
  Rank rank(AgentId a) const { return rank_[idx(a)]; }
  bool eligible(AgentId a) const { return rank_[idx(a)] < empty_rank(); }

  /// Tier holding the agent, or nullopt when it is absent.
  std::optional<std::size_t> tier_of(AgentId a) const;

  friend bool operator==(const PriorityRanking& a, const PriorityRanking& b) {
    return a.cutoff_ == b.cutoff_ && a.tiers_ == b.tiers_ && a.rank_.size() == b.rank_.size();
  }

 private:
  std::vector<std::vector<AgentId>> tiers_;
  std::size_t cutoff_ = 0;
  std::vector<Rank> rank_;
};

/// nullopt stands for the empty set.
using Contender = std::optional<AgentId>;

bool strictly_prefers(const PriorityRanking& r, Contender a, Contender b);

struct Category {
  std::string name;
  CategoryKind kind = CategoryKind::preferential;
  std::size_t quota = 0;
  PriorityRanking priority;

  friend bool operator==(const Category&, const Category&) = default;
};

class Instance {
 public:
  Instance() = default;

  /// Validates every invariant; throws ValidationError.
  Instance(std::vector<std::string> agent_names, std::vector<Category> categories,
           std::vector<AgentId> baseline);

  std::size_t agent_count() const { return agent_names_.size(); }
  std::size_t category_count() const { return categories_.size(); }

  const std::vector<std::string>& agent_names() const { return agent_names_; }
  const std::string& agent_name(AgentId a) const { return agent_names_[idx(a)]; }
  const std::vector<Category>& categories() const { return categories_; }
  const Category& category(CategoryId c) const { return categories_[idx(c)]; }

  /// Highest priority first.
  const std::vector<AgentId>& baseline() const { return baseline_; }
  std::size_t baseline_position(AgentId a) const { return baseline_pos_[idx(a)]; }
  bool baseline_prefers(AgentId a, AgentId b) const {
    return baseline_pos_[idx(a)] < baseline_pos_[idx(b)];
  }

  std::vector<CategoryId> all_categories() const;
  std::vector<CategoryId> preferential_categories() const;
  std::optional<CategoryId> unreserved_first() const;
  std::optional<CategoryId> unreserved_last() const;
  bool has_unreserved() const { return unreserved_first() || unreserved_last(); }
  /// Sum of quotas over the unreserved sub-categories.
  std::size_t unreserved_quota() const;

  std::optional<AgentId> find_agent(std::string_view name) const;
  std::optional<CategoryId> find_category(std::string_view name) const;

  /// Copy with one category's ranking replaced (validated).
  Instance with_priority(CategoryId c, PriorityRanking ranking) const;
  /// Copy with another baseline; unreserved rankings follow it.
  Instance with_baseline(std::vector<AgentId> baseline) const;
  /// Copy with other quotas (same length as categories).
  Instance with_quotas(const std::vector<std::size_t>& quotas) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.agent_names_ == b.agent_names_ && a.categories_ == b.categories_ &&
           a.baseline_ == b.baseline_;
  }

 private:
  std::vector<std::string> agent_names_;
  std::vector<Category> categories_;
  std::vector<AgentId> baseline_;
  std::vector<std::size_t> baseline_pos_;
};

bool eligible(const Instance& inst, AgentId i, CategoryId c);

/// Partial map from agents to categories.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t n_agents) : assignment_(n_agents) {}

  std::size_t agent_count() const { return assignment_.size(); }
  std::optional<CategoryId> operator[](AgentId a) const { return assignment_[idx(a)]; }
  bool matched(AgentId a) const { return assignment_[idx(a)].has_value(); }

  void assign(AgentId a, CategoryId c) { assignment_[idx(a)] = c; }
  void unassign(AgentId a) { assignment_[idx(a)].reset(); }

  /// Number of matched agents.
  std::size_t size() const;
  std::size_t load(CategoryId c) const;
  std::vector<AgentId> assigned_to(CategoryId c) const;

  /// Canonical form: (agent, category) pairs sorted by agent.
  std::vector<std::pair<AgentId, CategoryId>> pairs() const;

  /// Throws ValidationError if sizes or quotas do not fit the instance.
  void validate(const Instance& inst) const;

  friend auto operator<=>(const Matching&, const Matching&) = default;
  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::optional<CategoryId>> assignment_;
};

/// Per-category edit applied by a Manipulation.
struct Unchanged {
  friend bool operator==(const Unchanged&, const Unchanged&) = default;
};
/// Drop out of the ranking entirely (tied with the empty set).
struct Hide {
  friend bool operator==(const Hide&, const Hide&) = default;
};
/// Join tier `tier`, or form a new tier directly below it when `below` is set.
/// Tier indices refer to the ranking before the edit.
struct Demote {
  std::size_t tier = 0;
  bool below = false;
  friend bool operator==(const Demote&, const Demote&) = default;
};
using CategoryEdit = std::variant<Unchanged, Hide, Demote>;

struct Manipulation {
  AgentId agent{};
  std::vector<CategoryEdit> edits;  // one per category, missing entries mean Unchanged
};

/// Throws ValidationError if an edit would raise the agent anywhere or
/// touches an unreserved category.
Instance apply_manipulation(const Instance& inst, const Manipulation& m);

/// True iff `agent`'s priority (weakly) decreases from `before` to `after` and
/// nothing else changes, checked pairwise over all agents and categories.
bool is_priority_decrease(const Instance& before, const Instance& after, AgentId agent);

/// All hide-subsets of the agent's eligible preferential categories, then up
/// to `budget` single-category demotions. Distinct, deterministic order.
std::vector<Instance> enumerate_priority_decreases(const Instance& inst, AgentId agent,
                                                   std::size_t budget);

}  // namespace rationing
