#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rationing/model.hpp"
#include "rationing/rules.hpp"

namespace rationing {

/// Agent matched to a category it is not eligible for.
struct IneligiblePair {
  AgentId agent{};
  CategoryId category{};
  friend bool operator==(const IneligiblePair&, const IneligiblePair&) = default;
};

/// Unmatched `envier` ranks strictly above `envied`, who holds `category`.
struct Envy {
  AgentId envier{};
  AgentId envied{};
  CategoryId category{};
  friend bool operator==(const Envy&, const Envy&) = default;
};

/// Unmatched eligible agent next to a spare unit of `category`.
struct WastedUnit {
  AgentId agent{};
  CategoryId category{};
  friend bool operator==(const WastedUnit&, const WastedUnit&) = default;
};

struct SizeGap {
  std::size_t found = 0;
  std::size_t optimum = 0;
  friend bool operator==(const SizeGap&, const SizeGap&) = default;
};

/// Pair (higher, lower) that could swap into an earlier category tier.
struct OrderViolation {
  int clause = 1;
  AgentId higher{};
  AgentId lower{};
  CategoryId higher_category{};
  CategoryId lower_category{};
  friend bool operator==(const OrderViolation&, const OrderViolation&) = default;
};

/// `manipulator` lowered its priority (manipulated instance number
/// `instance_index`) and `affected` changed matched status.
struct ManipulationRecord {
  AgentId manipulator{};
  std::size_t instance_index = 0;
  AgentId affected{};
  bool matched_before = false;
  bool matched_after = false;
  friend bool operator==(const ManipulationRecord&, const ManipulationRecord&) = default;
};

using Witness = std::variant<IneligiblePair, Envy, WastedUnit, SizeGap, OrderViolation, ManipulationRecord>;

inline constexpr std::size_t kWitnessCap = 10;

struct AxiomReport {
  std::string axiom;
  bool holds = true;
  std::vector<Witness> witnesses;   // at most kWitnessCap
  std::size_t witness_count = 0;    // total violations found
  /// Set for the manipulation harnesses, whose verdict only covers the
  /// enumerated manipulation space.
  std::optional<std::size_t> manipulations_tested;

  void add(Witness w);
};

AxiomReport check_eligibility(const Instance& inst, const Matching& m);
AxiomReport check_respect_priorities(const Instance& inst, const Matching& m);
AxiomReport check_nonwasteful(const Instance& inst, const Matching& m);
/// Throws PreconditionError if `m` violates eligibility.
AxiomReport check_max_size(const Instance& inst, const Matching& m);
AxiomReport check_max_beneficiary(const Instance& inst, const Matching& m);
/// Instance must carry its unreserved pool split into first/last categories
/// (see split_unreserved); a missing sub-category makes its clause vacuous.
AxiomReport check_order_preservation(const Instance& inst, const Matching& m);

/// Only rr, srr and soft are accepted; throws PreconditionError otherwise.
AxiomReport check_strategyproofness(const RuleSpec& rule, const Instance& inst, std::size_t budget);
AxiomReport check_weak_nonbossiness(const RuleSpec& rule, const Instance& inst, std::size_t budget);

enum class Axiom {
  eligibility,
  respect_priorities,
  nonwasteful,
  max_size,
  max_beneficiary,
  order_preservation,
  strategyproofness,
  weak_nonbossiness,
};

std::string_view to_string(Axiom a);
std::optional<Axiom> parse_axiom(std::string_view name);
std::vector<Axiom> all_axioms();
bool is_harness(Axiom a);

/// Axioms the rule is guaranteed to satisfy on its domain.
std::vector<Axiom> guaranteed_axioms(RuleKind rule);

/// Static axioms evaluate `m` on `inst`; harness axioms re-run `rule` on
/// manipulated copies of `original` (the pre-split input instance).
AxiomReport check_axiom(Axiom axiom, const Instance& inst, const Matching& m,
                        const std::optional<RuleSpec>& rule, const Instance& original,
                        std::size_t budget);

}  // namespace rationing
