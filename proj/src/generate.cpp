#include "rationing/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace rationing {

Instance generate_instance(const GeneratorOptions& o) {
  const auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!probability(o.density) || !probability(o.tie_prob)) {
    throw ValidationError("probabilities must lie in [0, 1]");
  }

  std::mt19937_64 rng(o.seed);
  const std::size_t n = o.agents;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));

  std::vector<AgentId> baseline(n);
  for (std::size_t i = 0; i < n; ++i) baseline[i] = agent_id(i);
  std::shuffle(baseline.begin(), baseline.end(), rng);
  std::vector<std::size_t> position(n);
  for (std::size_t p = 0; p < n; ++p) position[idx(baseline[p])] = p;

  std::bernoulli_distribution coin(o.density);
  std::bernoulli_distribution tie(o.tie_prob);
  std::uniform_int_distribution<std::size_t> quota(0, o.max_quota);

  // Exclusive mode picks at most one category per agent up front.
  std::vector<std::optional<std::size_t>> home(n);
  if (o.exclusive && o.categories > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, o.categories - 1);
    for (auto& h : home) {
      if (coin(rng)) h = pick(rng);
    }
  }

  std::vector<Category> cats;
  for (std::size_t c = 0; c < o.categories; ++c) {
    Category cat;
    cat.name = "c" + std::to_string(c + 1);
    cat.quota = quota(rng);

    std::vector<AgentId> members;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in = o.exclusive ? home[i] == c : coin(rng);
      if (in) members.push_back(agent_id(i));
    }

    std::vector<std::vector<AgentId>> tiers;
    if (o.baseline_consistent) {
      std::sort(members.begin(), members.end(),
                [&](AgentId a, AgentId b) { return position[idx(a)] < position[idx(b)]; });
      for (AgentId a : members) tiers.push_back({a});
    } else {
      std::shuffle(members.begin(), members.end(), rng);
      for (AgentId a : members) {
        if (!tiers.empty() && tie(rng)) {
          tiers.back().push_back(a);
        } else {
          tiers.push_back({a});
        }
      }
    }
    const std::size_t cutoff = tiers.size();
    cat.priority = PriorityRanking(n, std::move(tiers), cutoff);
    cats.push_back(std::move(cat));
  }

  if (o.unreserved) {
    cats.push_back({"c_u", CategoryKind::unreserved_last, *o.unreserved,
                    PriorityRanking::strict(n, baseline)});
  }
  return Instance(std::move(names), std::move(cats), std::move(baseline));
}

}  // namespace rationing
