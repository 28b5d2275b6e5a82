#include <gtest/gtest.h>

#include "rationing/graph.hpp"
#include "rationing/oracle.hpp"
#include "support.hpp"

namespace rationing {
namespace {

using test::load;
using test::matching;

TEST(Oracle, ExampleOneMatchings) {
  const auto inst = load("example1.json");
  const auto all = enumerate_matchings(inst);
  const MatchingSet got(all.begin(), all.end());
  const MatchingSet expected{Matching(3), matching(inst, {{"2", "c1"}}), matching(inst, {{"2", "c2"}}),
                             matching(inst, {{"3", "c1"}}), matching(inst, {{"2", "c2"}, {"3", "c1"}})};
  EXPECT_EQ(all.size(), 5u);
  EXPECT_EQ(got, expected);
  EXPECT_EQ(axiom_satisfying_set(inst), MatchingSet{matching(inst, {{"2", "c2"}, {"3", "c1"}})});
  EXPECT_EQ(rr_outcome_set(inst), MatchingSet{matching(inst, {{"2", "c2"}, {"3", "c1"}})});
  EXPECT_TRUE(verify_characterization(inst).holds);
}

TEST(Oracle, TrivialInstances) {
  const Instance none({"a", "b"}, {{"c", CategoryKind::preferential, 1, PriorityRanking(2, {}, 0)}},
                      {agent_id(0), agent_id(1)});
  EXPECT_EQ(enumerate_matchings(none).size(), 1u);
  EXPECT_EQ(axiom_satisfying_set(none), MatchingSet{Matching(2)});

  const Instance one({"a"}, {{"c", CategoryKind::preferential, 1, PriorityRanking(1, {{agent_id(0)}}, 1)}},
                     {agent_id(0)});
  EXPECT_EQ(enumerate_matchings(one).size(), 2u);
  Matching matched(1);
  matched.assign(agent_id(0), category_id(0));
  EXPECT_EQ(rr_outcome_set(one), MatchingSet{matched});

  EXPECT_TRUE(verify_characterization(Instance({}, {}, {})).holds);
}

TEST(Oracle, EnumerationOrder) {
  const auto inst = load("example1.json");
  const auto all = enumerate_matchings(inst);
  // Agent 1 has no edges; agent 2 tries c1, c2, unmatched; agent 3 tries c1, unmatched.
  const std::vector<Matching> expected{matching(inst, {{"2", "c1"}}), matching(inst, {{"2", "c2"}, {"3", "c1"}}),
                                       matching(inst, {{"2", "c2"}}), matching(inst, {{"3", "c1"}}), Matching(3)};
  EXPECT_EQ(all, expected);
}

TEST(Oracle, IllustrationCharacterization) {
  const auto inst = load("rr_illustration.json");
  const auto expected = axiom_satisfying_set(inst);
  EXPECT_TRUE(expected.contains(matching(inst, {{"1", "c1"}, {"3", "c2"}})));
  EXPECT_EQ(rr_outcome_set(inst), expected);
}

TEST(Oracle, ExclusiveCountClosedForm) {
  // With one category per agent, the count is a product over categories of
  // sum_{k <= q} C(|N_c|, k).
  const auto binomial = [](std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto o = test::small_options(seed, 7, 3, 0.8, 0.3);
    o.exclusive = true;
    const auto inst = generate_instance(o);
    std::size_t expected = 1;
    for (std::size_t c = 0; c < inst.category_count(); ++c) {
      std::size_t members = 0;
      for (std::size_t i = 0; i < inst.agent_count(); ++i) members += eligible(inst, agent_id(i), category_id(c));
      std::size_t ways = 0;
      for (std::size_t k = 0; k <= std::min(members, inst.category(category_id(c)).quota); ++k) {
        ways += binomial(members, k);
      }
      expected *= ways;
    }
    ASSERT_EQ(enumerate_matchings(inst).size(), expected) << seed;
  }
}

TEST(Oracle, EnumerationAgreesWithBruteForce) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 1 + seed % 6, 1 + seed % 3, 0.6, 0.3));
    MatchingSet brute;
    test::brute_force(inst, [&brute](const Matching& m) { brute.insert(m); });
    const auto all = enumerate_matchings(inst);
    ASSERT_EQ(all.size(), brute.size()) << seed;
    ASSERT_EQ(MatchingSet(all.begin(), all.end()), brute) << seed;
    std::size_t best = 0;
    for (const auto& m : all) best = std::max(best, m.size());
    const auto cats = inst.all_categories();
    ASSERT_EQ(best, max_matching_size(reservation_graph(inst, cats)));
  }
}

TEST(Oracle, SoundnessOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 1 + seed % 5, 1 + seed % 3, 0.6, 0.3));
    const auto produced = rr_outcome_set(inst);
    const auto expected = axiom_satisfying_set(inst);
    ASSERT_TRUE(std::includes(expected.begin(), expected.end(), produced.begin(), produced.end())) << seed;
  }
}

TEST(Oracle, Guards) {
  const auto inst = generate_instance(test::small_options(1, 9, 2, 0.5, 0.0));
  EXPECT_THROW(enumerate_matchings(inst), OracleBoundError);
  EXPECT_THROW(rr_outcome_set(inst), OracleBoundError);
  OracleLimits tight;
  tight.max_matchings = 2;
  EXPECT_THROW(enumerate_matchings(load("example1.json"), tight), OracleBoundError);
  EXPECT_THROW(rr_outcome_set(load("guarantees.json")), PreconditionError);
}

TEST(Oracle, FaultyRrDetected) {
  RrOptions fault;
  fault.skip_rejection = 0;
  bool detected = false;
  for (std::uint64_t seed = 0; seed < 100 && !detected; ++seed) {
    const auto inst = generate_instance(test::small_options(seed, 5, 2, 0.6, 0.0));
    detected = !verify_characterization(inst, {}, fault).holds;
  }
  EXPECT_TRUE(detected);
}

}  // namespace
}  // namespace rationing
