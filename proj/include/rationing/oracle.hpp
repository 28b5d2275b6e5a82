#pragma once

#include <cstddef>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

#include "rationing/graph.hpp"
#include "rationing/model.hpp"
#include "rationing/rules.hpp"

namespace rationing {

/// Exhaustive search would exceed the configured resource guard.
class OracleBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_agents = 8;            // enumerate_matchings
  std::size_t max_ordering_agents = 7;   // n! baselines in rr_outcome_set
  std::size_t max_matchings = 2'000'000; // per enumeration
};

/// Canonical set; Matching compares by its sorted (agent, category) pairs.
using MatchingSet = std::set<Matching>;

/// Visits every matching of `g`, depth first over agents in id order, each
/// agent trying its categories in slot order and then staying unmatched.
void for_each_matching(const ReservationGraph& g, const std::function<void(const Matching&)>& visit,
                       const OracleLimits& limits = {});

/// Every eligibility-compliant matching of the instance, each exactly once.
std::vector<Matching> enumerate_matchings(const Instance& inst, const OracleLimits& limits = {});

/// Matchings that are eligible, respect priorities and have maximum size.
MatchingSet axiom_satisfying_set(const Instance& inst, const OracleLimits& limits = {});

/// Union over all baselines of every maximum matching of the final reduced
/// graph. Requires an instance without unreserved categories.
MatchingSet rr_outcome_set(const Instance& inst, const OracleLimits& limits = {},
                           const RrOptions& rr_options = {});

struct CharacterizationReport {
  bool holds = true;
  MatchingSet missing_from_rr;  // satisfy the axioms but no baseline produces them
  MatchingSet extra_in_rr;      // produced by rr yet violate an axiom
};

CharacterizationReport verify_characterization(const Instance& inst, const OracleLimits& limits = {},
                                               const RrOptions& rr_options = {});

}  // namespace rationing
