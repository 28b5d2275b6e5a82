#include "rationing/axioms.hpp"

#include <algorithm>

#include "rationing/graph.hpp"

namespace rationing {

void AxiomReport::add(Witness w) {
  holds = false;
  ++witness_count;
  if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
}

namespace {

AxiomReport named(Axiom a) {
  AxiomReport r;
  r.axiom = to_string(a);
  return r;
}

bool is_preferential(const Instance& inst, CategoryId c) {
  return inst.category(c).kind == CategoryKind::preferential;
}

}  // namespace

AxiomReport check_eligibility(const Instance& inst, const Matching& m) {
  auto report = named(Axiom::eligibility);
  for (const auto& [a, c] : m.pairs()) {
    if (!eligible(inst, a, c)) report.add(IneligiblePair{a, c});
  }
  return report;
}

AxiomReport check_respect_priorities(const Instance& inst, const Matching& m) {
  auto report = named(Axiom::respect_priorities);
  const auto held = m.pairs();
  for (std::size_t j = 0; j < inst.agent_count(); ++j) {
    if (m.matched(agent_id(j))) continue;
    for (const auto& [i, c] : held) {
      if (strictly_prefers(inst.category(c).priority, agent_id(j), i)) {
        report.add(Envy{agent_id(j), i, c});
      }
    }
  }
  return report;
}

AxiomReport check_nonwasteful(const Instance& inst, const Matching& m) {
  auto report = named(Axiom::nonwasteful);
  for (std::size_t c = 0; c < inst.category_count(); ++c) {
    const CategoryId cat = category_id(c);
    if (m.load(cat) >= inst.category(cat).quota) continue;
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      if (!m.matched(agent_id(i)) && eligible(inst, agent_id(i), cat)) {
        report.add(WastedUnit{agent_id(i), cat});
      }
    }
  }
  return report;
}

AxiomReport check_max_size(const Instance& inst, const Matching& m) {
  if (!check_eligibility(inst, m).holds) {
    throw PreconditionError("maximum size is only defined among eligibility-compliant matchings");
  }
  auto report = named(Axiom::max_size);
  const auto cats = inst.all_categories();
  const std::size_t optimum = max_matching_size(reservation_graph(inst, cats));
  if (m.size() != optimum) report.add(SizeGap{m.size(), optimum});
  return report;
}

AxiomReport check_max_beneficiary(const Instance& inst, const Matching& m) {
  auto report = named(Axiom::max_beneficiary);
  const auto pref = inst.preferential_categories();
  const std::size_t optimum = max_matching_size(reservation_graph(inst, pref));
  std::size_t found = 0;
  for (const auto& [a, c] : m.pairs()) {
    if (is_preferential(inst, c)) ++found;
  }
  if (found != optimum) report.add(SizeGap{found, optimum});
  return report;
}

AxiomReport check_order_preservation(const Instance& inst, const Matching& m) {
  auto report = named(Axiom::order_preservation);
  const auto first = inst.unreserved_first();
  const auto last = inst.unreserved_last();
  for (std::size_t x = 0; x < inst.agent_count(); ++x) {
    for (std::size_t y = 0; y < inst.agent_count(); ++y) {
      if (x == y) continue;
      const AgentId i = agent_id(x);
      const AgentId j = agent_id(y);
      const auto mi = m[i];
      const auto mj = m[j];
      if (!mi || !mj) continue;
      const bool i_above_j = strictly_prefers(inst.category(*mj).priority, i, j);
      if (!i_above_j) continue;
      // (i) i holds a preferential or last-round unit that j could take, while
      // j sits in the first round.
      if ((is_preferential(inst, *mi) || mi == last) && eligible(inst, j, *mi) && mj == first) {
        report.add(OrderViolation{1, i, j, *mi, *mj});
      }
      // (ii) j holds a preferential or first-round unit that i could take,
      // while i waits in the last round.
      if ((is_preferential(inst, *mj) || mj == first) && eligible(inst, i, *mj) && mi == last) {
        report.add(OrderViolation{2, i, j, *mi, *mj});
      }
    }
  }
  return report;
}

namespace {

void require_harness_rule(const RuleSpec& rule) {
  if (rule.kind != RuleKind::rr && rule.kind != RuleKind::srr && rule.kind != RuleKind::soft) {
    throw PreconditionError("manipulation harness supports rr, srr and soft only, not " +
                            std::string(to_string(rule.kind)));
  }
}

std::vector<bool> matched_status(const RuleSpec& rule, const Instance& inst) {
  const Matching m = run_rule(rule, inst);
  std::vector<bool> out(inst.agent_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m.matched(agent_id(i));
  return out;
}

// Calls visit(manipulator, index, status before, status after) for every
// unmatched agent and each of its enumerated priority decreases.
template <class Visit>
std::size_t for_each_manipulation(const RuleSpec& rule, const Instance& inst, std::size_t budget,
                                  Visit visit) {
  require_harness_rule(rule);
  const auto truthful = matched_status(rule, inst);
  std::size_t tested = 0;
  for (std::size_t i = 0; i < inst.agent_count(); ++i) {
    if (truthful[i]) continue;
    const auto variants = enumerate_priority_decreases(inst, agent_id(i), budget);
    for (std::size_t k = 0; k < variants.size(); ++k) {
      visit(agent_id(i), k, truthful, matched_status(rule, variants[k]));
      ++tested;
    }
  }
  return tested;
}

}  // namespace

AxiomReport check_strategyproofness(const RuleSpec& rule, const Instance& inst, std::size_t budget) {
  auto report = named(Axiom::strategyproofness);
  report.manipulations_tested = for_each_manipulation(
      rule, inst, budget,
      [&](AgentId i, std::size_t k, const std::vector<bool>& before, const std::vector<bool>& after) {
        if (after[idx(i)]) report.add(ManipulationRecord{i, k, i, before[idx(i)], true});
      });
  return report;
}

AxiomReport check_weak_nonbossiness(const RuleSpec& rule, const Instance& inst, std::size_t budget) {
  auto report = named(Axiom::weak_nonbossiness);
  report.manipulations_tested = for_each_manipulation(
      rule, inst, budget,
      [&](AgentId i, std::size_t k, const std::vector<bool>& before, const std::vector<bool>& after) {
        for (std::size_t j = 0; j < before.size(); ++j) {
          if (inst.baseline_prefers(i, agent_id(j)) && before[j] != after[j]) {
            report.add(ManipulationRecord{i, k, agent_id(j), before[j], after[j]});
          }
        }
      });
  return report;
}

std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::eligibility:
      return "eligibility";
    case Axiom::respect_priorities:
      return "respect_priorities";
    case Axiom::nonwasteful:
      return "nonwasteful";
    case Axiom::max_size:
      return "max_size";
    case Axiom::max_beneficiary:
      return "max_beneficiary";
    case Axiom::order_preservation:
      return "order_preservation";
    case Axiom::strategyproofness:
      return "strategyproofness";
    case Axiom::weak_nonbossiness:
      return "weak_nonbossiness";
  }
  return "?";
}

std::vector<Axiom> all_axioms() {
  return {Axiom::eligibility,     Axiom::respect_priorities, Axiom::nonwasteful,
          Axiom::max_size,        Axiom::max_beneficiary,    Axiom::order_preservation,
          Axiom::strategyproofness, Axiom::weak_nonbossiness};
}

std::optional<Axiom> parse_axiom(std::string_view name) {
  for (Axiom a : all_axioms()) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

bool is_harness(Axiom a) {
  return a == Axiom::strategyproofness || a == Axiom::weak_nonbossiness;
}

std::vector<Axiom> guaranteed_axioms(RuleKind rule) {
  using enum Axiom;
  switch (rule) {
    case RuleKind::rr:
      return {eligibility, respect_priorities, nonwasteful, max_size, strategyproofness,
              weak_nonbossiness};
    case RuleKind::srr:
      return {eligibility, max_beneficiary, respect_priorities, nonwasteful, max_size,
              order_preservation, strategyproofness, weak_nonbossiness};
    case RuleKind::soft:
      return {max_beneficiary, respect_priorities, order_preservation, strategyproofness,
              weak_nonbossiness};
    case RuleKind::mg:
    case RuleKind::oaa:
      return {eligibility, max_beneficiary, respect_priorities, nonwasteful, max_size,
              order_preservation};
    case RuleKind::da:
      return {eligibility, respect_priorities, nonwasteful};
  }
  return {};
}

AxiomReport check_axiom(Axiom axiom, const Instance& inst, const Matching& m,
                        const std::optional<RuleSpec>& rule, const Instance& original,
                        std::size_t budget) {
  switch (axiom) {
    case Axiom::eligibility:
      return check_eligibility(inst, m);
    case Axiom::respect_priorities:
      return check_respect_priorities(inst, m);
    case Axiom::nonwasteful:
      return check_nonwasteful(inst, m);
    case Axiom::max_size:
      return check_max_size(inst, m);
    case Axiom::max_beneficiary:
      return check_max_beneficiary(inst, m);
    case Axiom::order_preservation:
      return check_order_preservation(inst, m);
    case Axiom::strategyproofness:
    case Axiom::weak_nonbossiness:
      if (!rule) throw PreconditionError(std::string(to_string(axiom)) + " needs a rule, not a matching");
      return axiom == Axiom::strategyproofness ? check_strategyproofness(*rule, original, budget)
                                               : check_weak_nonbossiness(*rule, original, budget);
  }
  throw PreconditionError("unknown axiom");
}

}  // namespace rationing
