#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rationing/model.hpp"

namespace rationing {

struct RrDecision {
  AgentId agent{};
  bool rejected = false;
  /// Maximum matching size of the reduced graph with this agent also rejected.
  std::size_t ms = 0;

  friend bool operator==(const RrDecision&, const RrDecision&) = default;
};

struct RrTrace {
  std::vector<AgentId> rejected;  // sorted by id
  std::vector<RrDecision> decisions;  // scan order, lowest baseline first
  std::size_t ms_total = 0;

  friend bool operator==(const RrTrace&, const RrTrace&) = default;
};

struct RrOptions {
  /// Reuse the previous matching across rejection tests instead of solving
  /// every reduced graph from scratch. Both modes give identical results.
  bool incremental = true;
  /// Agents left out of the problem entirely (neither matched nor rejected).
  std::vector<AgentId> excluded;
  /// Fault injection for mutation tests: skip the k-th rejection.
  std::optional<std::size_t> skip_rejection;
};

struct RrResult {
  Matching matching;
  RrTrace trace;
};

/// Reverse rejecting rule over the categories `cats`.
RrResult rr(const Instance& inst, std::span<const CategoryId> cats, const RrOptions& options = {});
RrResult rr(const Instance& inst);

struct UnreservedSplit {
  std::size_t first = 0;  // units handed out before the preferential categories
  std::size_t last = 0;   // units handed out after them

  friend bool operator==(const UnreservedSplit&, const UnreservedSplit&) = default;
};

/// Materializes the unreserved pool as an unreserved_first category with
/// `split.first` units and an unreserved_last one with `split.last` units.
/// Existing category ids are preserved; a missing sub-category is appended.
/// Throws PreconditionError if there is no unreserved category or the split
/// does not add up to the pool size.
Instance split_unreserved(const Instance& inst, UnreservedSplit split);

/// Smart reverse rejecting rule. The matching refers to split_unreserved(inst, split).
Matching srr(const Instance& inst, UnreservedSplit split);

/// srr, then leftover preferential units go to unmatched agents in baseline
/// order regardless of eligibility. Same category ids as srr.
Matching soft_reserves(const Instance& inst, UnreservedSplit split);

/// Throws PreconditionError unless each agent is eligible for at most one
/// preferential category and every preferential ranking orders its eligible
/// agents strictly by the baseline.
void require_reserve_preconditions(const Instance& inst);

/// Minimum guarantees; the matching refers to split_unreserved(inst, {0, q_u}).
Matching minimum_guarantees(const Instance& inst);

/// Over and above; the matching refers to split_unreserved(inst, {q_u, 0}).
Matching over_and_above(const Instance& inst);

/// Per-agent strict order over eligible categories.
using Preferences = std::vector<std::vector<CategoryId>>;

/// Agent-proposing deferred acceptance; ties inside a category are broken by
/// the baseline.
Matching deferred_acceptance(const Instance& inst, const Preferences& prefs);

enum class RuleKind { rr, srr, mg, oaa, da, soft };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> parse_rule(std::string_view name);

/// Rule plus the parameters it needs.
struct RuleSpec {
  RuleKind kind = RuleKind::rr;
  UnreservedSplit split;
  Preferences prefs;
  RrOptions rr_options;
};

/// Instance the rule's matching refers to (the split instance for srr, soft,
/// mg and oaa; the input otherwise).
Instance output_instance(const RuleSpec& rule, const Instance& inst);

Matching run_rule(const RuleSpec& rule, const Instance& inst);

}  // namespace rationing
