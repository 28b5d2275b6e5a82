#include <gtest/gtest.h>

#include "rationing/axioms.hpp"
#include "rationing/graph.hpp"
#include "support.hpp"

namespace rationing {
namespace {

using test::agent;
using test::cat;
using test::load;
using test::matching;

TEST(Axioms, ExampleOneEligibility) {
  const auto inst = load("example1.json");
  EXPECT_TRUE(check_eligibility(inst, matching(inst, {{"2", "c2"}, {"3", "c1"}})).holds);
  EXPECT_TRUE(check_eligibility(inst, Matching(3)).holds);
  const auto bad = check_eligibility(inst, matching(inst, {{"1", "c1"}}));
  ASSERT_FALSE(bad.holds);
  EXPECT_EQ(bad.witnesses.front(), Witness(IneligiblePair{agent(inst, "1"), cat(inst, "c1")}));
}

TEST(Axioms, ExampleOneRespectPriorities) {
  const auto inst = load("example1.json");
  const auto mu4 = check_respect_priorities(inst, matching(inst, {{"3", "c1"}}));
  ASSERT_FALSE(mu4.holds);
  EXPECT_EQ(mu4.witnesses.front(), Witness(Envy{agent(inst, "2"), agent(inst, "3"), cat(inst, "c1")}));
  EXPECT_TRUE(check_respect_priorities(inst, Matching(3)).holds);
  EXPECT_TRUE(check_respect_priorities(inst, matching(inst, {{"2", "c1"}})).holds);
  EXPECT_TRUE(check_respect_priorities(inst, matching(inst, {{"2", "c2"}})).holds);
}

TEST(Axioms, FullMatchingRespectsPriorities) {
  const auto inst = load("rr_illustration.json");
  Matching m(4);
  for (std::size_t i = 0; i < 4; ++i) m.assign(agent_id(i), category_id(0));
  EXPECT_TRUE(check_respect_priorities(inst, m).holds);
  EXPECT_TRUE(check_nonwasteful(inst, m).holds);
}

TEST(Axioms, ExampleOneNonwasteful) {
  const auto inst = load("example1.json");
  EXPECT_TRUE(check_nonwasteful(inst, matching(inst, {{"2", "c1"}})).holds);
  EXPECT_TRUE(check_nonwasteful(inst, matching(inst, {{"2", "c2"}, {"3", "c1"}})).holds);
  EXPECT_FALSE(check_nonwasteful(inst, Matching(3)).holds);
  EXPECT_FALSE(check_nonwasteful(inst, matching(inst, {{"3", "c1"}})).holds);
  const auto mu3 = check_nonwasteful(inst, matching(inst, {{"2", "c2"}}));
  ASSERT_FALSE(mu3.holds);
  EXPECT_EQ(mu3.witnesses.front(), Witness(WastedUnit{agent(inst, "3"), cat(inst, "c1")}));
  EXPECT_TRUE(check_nonwasteful(inst.with_quotas({0, 0}), Matching(3)).holds);
}

TEST(Axioms, ExampleOneMaxSize) {
  const auto inst = load("example1.json");
  EXPECT_TRUE(check_max_size(inst, matching(inst, {{"2", "c2"}, {"3", "c1"}})).holds);
  const auto mu2 = check_max_size(inst, matching(inst, {{"2", "c1"}}));
  ASSERT_FALSE(mu2.holds);
  EXPECT_EQ(mu2.witnesses.front(), Witness(SizeGap{1, 2}));
  EXPECT_THROW(check_max_size(inst, matching(inst, {{"1", "c1"}})), PreconditionError);
  const Instance empty({}, {}, {});
  EXPECT_TRUE(check_max_size(empty, Matching(0)).holds);
}

TEST(Axioms, MaxBeneficiary) {
  const auto inst = split_unreserved(load("guarantees.json"), {0, 1});
  EXPECT_TRUE(check_max_beneficiary(inst, matching(inst, {{"1", "c"}, {"2", "c_u"}})).holds);
  EXPECT_FALSE(check_max_beneficiary(inst, matching(inst, {{"1", "c_u"}})).holds);

  std::vector<AgentId> order{agent_id(0), agent_id(1)};
  const Instance pool_only({"1", "2"}, {{"c_u", CategoryKind::unreserved_last, 1, PriorityRanking::strict(2, order)}},
                           order);
  EXPECT_TRUE(check_max_beneficiary(pool_only, Matching(2)).holds);
}

TEST(Axioms, MaxBeneficiaryAgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto o = test::small_options(seed, 5, 2, 0.5, 0.3);
    o.unreserved = 1;
    const auto inst = split_unreserved(generate_instance(o), {1, 0});
    const auto best = test::brute_max_preferential(inst);
    test::brute_force(inst, [&](const Matching& m) {
      std::size_t count = 0;
      for (const auto c : inst.preferential_categories()) count += m.load(c);
      ASSERT_EQ(check_max_beneficiary(inst, m).holds, count == best);
    });
  }
}

TEST(Axioms, OrderPreservation) {
  const auto g = load("guarantees.json");
  const auto low = split_unreserved(g, {0, 1});
  EXPECT_TRUE(check_order_preservation(low, matching(low, {{"1", "c"}, {"2", "c_u"}})).holds);
  const auto high = split_unreserved(g, {1, 0});
  EXPECT_TRUE(check_order_preservation(high, matching(high, {{"1", "c_u^1"}, {"4", "c"}})).holds);

  const auto remark = split_unreserved(load("oaa_remark.json"), {1, 0});
  EXPECT_TRUE(check_order_preservation(remark, matching(remark, {{"2", "c_u^1"}, {"1", "c1"}, {"4", "c2"}})).holds);
  const auto bad = check_order_preservation(remark, matching(remark, {{"3", "c_u^1"}, {"1", "c1"}, {"2", "c2"}}));
  ASSERT_FALSE(bad.holds);
  EXPECT_EQ(bad.witnesses.front(),
            Witness(OrderViolation{1, agent(remark, "1"), agent(remark, "3"), cat(remark, "c1"), cat(remark, "c_u^1")}));

  EXPECT_TRUE(check_order_preservation(low, matching(low, {{"1", "c"}})).holds);
}

TEST(Axioms, BridgeToReducedGraph) {
  // A matching that respects priorities and matches everyone outside U is a
  // matching of the graph reduced by U.
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 5, 2, 0.6, 0.3));
    const auto cats = inst.all_categories();
    test::brute_force(inst, [&](const Matching& m) {
      if (!check_respect_priorities(inst, m).holds) return;
      std::vector<AgentId> unmatched;
      for (std::size_t i = 0; i < inst.agent_count(); ++i) {
        if (!m.matched(agent_id(i))) unmatched.push_back(agent_id(i));
      }
      const auto g = reduced_graph(inst, cats, unmatched);
      for (const auto& [a, c] : m.pairs()) ASSERT_TRUE(g.has_edge(a, c)) << seed;
    });
  }
}

TEST(Axioms, WitnessCap) {
  const std::size_t n = 30;
  std::vector<std::string> names;
  std::vector<AgentId> order;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    order.push_back(agent_id(i));
  }
  const Instance inst(names, {{"c", CategoryKind::preferential, n, PriorityRanking(n, {}, 0)}}, order);
  Matching m(n);
  for (std::size_t i = 0; i < n; ++i) m.assign(agent_id(i), category_id(0));
  const auto report = check_eligibility(inst, m);
  EXPECT_EQ(report.witnesses.size(), kWitnessCap);
  EXPECT_EQ(report.witness_count, n);
}

TEST(Harness, ExampleOneStrategyproof) {
  const auto inst = load("example1.json");
  const RuleSpec rule;
  const auto report = check_strategyproofness(rule, inst, 64);
  EXPECT_TRUE(report.holds);
  EXPECT_TRUE(report.manipulations_tested.has_value());
}

TEST(Harness, NonBossinessRemark) {
  const auto inst = load("rr_illustration.json");
  const RuleSpec rule;
  EXPECT_TRUE(check_strategyproofness(rule, inst, 64).holds);
  EXPECT_TRUE(check_weak_nonbossiness(rule, inst, 64).holds);

  const auto hidden = apply_manipulation(inst, {agent(inst, "4"), {Hide{}}});
  EXPECT_EQ(rr(inst).matching, matching(inst, {{"1", "c1"}, {"3", "c2"}}));
  EXPECT_EQ(rr(hidden).matching, matching(hidden, {{"1", "c2"}, {"2", "c1"}}));
}

TEST(Harness, SingleAgent) {
  const Instance inst({"a"}, {{"c", CategoryKind::preferential, 1, PriorityRanking(1, {{agent_id(0)}}, 1)}},
                      {agent_id(0)});
  const RuleSpec rule;
  EXPECT_TRUE(check_strategyproofness(rule, inst, 8).holds);
  EXPECT_TRUE(check_weak_nonbossiness(rule, inst, 8).holds);
}

TEST(Harness, RandomRrWeaklyNonBossy) {
  const RuleSpec rule;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 1 + seed % 6, 1 + seed % 3, 0.6, 0.3));
    ASSERT_TRUE(check_weak_nonbossiness(rule, inst, 16).holds) << seed;
  }
}

TEST(Harness, DetectsManipulableRule) {
  // DA with fixed preferences is not a rationing rule the harness accepts.
  RuleSpec da;
  da.kind = RuleKind::da;
  EXPECT_THROW(check_strategyproofness(da, load("example1.json"), 4), PreconditionError);
}

TEST(Harness, FaultyRrIsCaught) {
  RuleSpec faulty;
  faulty.rr_options.skip_rejection = 0;
  bool caught = false;
  for (std::uint64_t seed = 0; seed < 200 && !caught; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 5, 2, 0.6, 0.0));
    const auto m = run_rule(faulty, inst);
    for (Axiom a : guaranteed_axioms(RuleKind::rr)) {
      if (!check_axiom(a, inst, m, faulty, inst, 16).holds) caught = true;
    }
  }
  EXPECT_TRUE(caught);
}

TEST(Axioms, NamesRoundTrip) {
  for (Axiom a : all_axioms()) EXPECT_EQ(parse_axiom(to_string(a)), a);
  EXPECT_EQ(parse_axiom("bogus"), std::nullopt);
}

}  // namespace
}  // namespace rationing
