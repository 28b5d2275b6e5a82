#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "rationing/model.hpp"

namespace rationing {

struct GeneratorOptions {
  std::size_t agents = 5;
  std::size_t categories = 2;
  std::size_t max_quota = 2;  // quotas drawn uniformly from 0..max_quota
  double density = 0.5;       // probability an (agent, category) pair is eligible
  double tie_prob = 0.0;      // probability adjacent eligible agents share a tier
  std::uint64_t seed = 0;
  std::optional<std::size_t> unreserved;  // appends "c_u" with this quota
  /// Each agent is eligible for at most one preferential category.
  bool exclusive = false;
  /// Preferential rankings list eligible agents in baseline order, strictly.
  bool baseline_consistent = false;
};

/// Deterministic for a fixed seed. Agents are named "1".."n", categories
/// "c1".."ck". Throws ValidationError on out-of-range probabilities.
Instance generate_instance(const GeneratorOptions& options);

}  // namespace rationing
