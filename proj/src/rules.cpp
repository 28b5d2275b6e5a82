#include "rationing/rules.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rationing/detail/bmatcher.hpp"
#include "rationing/graph.hpp"

namespace rationing {

namespace {

using detail::BMatcher;
using detail::Edge;
using Rank = PriorityRanking::Rank;

std::vector<std::uint32_t> baseline_order(const Instance& inst) {
  std::vector<std::uint32_t> order;
  order.reserve(inst.agent_count());
  for (AgentId a : inst.baseline()) order.push_back(static_cast<std::uint32_t>(idx(a)));
  return order;
}

detail::Adjacency ranked_adjacency(const Instance& inst, std::span<const CategoryId> cats) {
  detail::Adjacency adj(inst.agent_count());
  for (std::size_t s = 0; s < cats.size(); ++s) {
    const auto& ranking = inst.category(cats[s]).priority;
    for (std::size_t i = 0; i < inst.agent_count(); ++i) {
      if (ranking.eligible(agent_id(i))) {
        adj[i].push_back({static_cast<std::uint32_t>(s), ranking.rank(agent_id(i))});
      }
    }
  }
  return adj;
}

std::vector<std::size_t> quotas_of(const Instance& inst, std::span<const CategoryId> cats) {
  std::vector<std::size_t> q;
  for (CategoryId c : cats) q.push_back(inst.category(c).quota);
  return q;
}

ReservationGraph reduced_without(const Instance& inst, std::span<const CategoryId> cats,
                                 std::span<const AgentId> rejected,
                                 std::span<const AgentId> excluded) {
  auto g = reduced_graph(inst, cats, rejected);
  for (AgentId a : excluded) g.remove_agent(a);
  return g;
}

}  // namespace

RrResult rr(const Instance& inst, std::span<const CategoryId> cats, const RrOptions& options) {
  const std::size_t n = inst.agent_count();
  const std::size_t k = cats.size();

  std::vector<bool> present(n, true);
  for (AgentId a : options.excluded) present[idx(a)] = false;

  const auto adj = ranked_adjacency(inst, cats);
  const auto order = baseline_order(inst);
  std::vector<Rank> bound(k, std::numeric_limits<Rank>::max());
  const auto is_present = [&present](std::uint32_t a) { return present[a]; };
  const auto allowed = [&bound](std::uint32_t, const Edge& e) { return e.rank <= bound[e.slot]; };

  BMatcher matcher(n, quotas_of(inst, cats));
  RrTrace trace;
  trace.ms_total = matcher.augment(order, adj, is_present, allowed);

  std::vector<AgentId> rejected;
  std::size_t rejections = 0;
  for (auto it = inst.baseline().rbegin(); it != inst.baseline().rend(); ++it) {
    const AgentId i = *it;
    if (!present[idx(i)]) continue;

    std::size_t ms = 0;
    if (options.incremental) {
      const BMatcher saved = matcher;
      const auto saved_bound = bound;
      present[idx(i)] = false;
      matcher.unassign(idx(i));
      for (std::size_t s = 0; s < k; ++s) {
        const auto& ranking = inst.category(cats[s]).priority;
        const Rank r = ranking.rank(i);
        if (r >= bound[s]) continue;
        bound[s] = r;
        const auto members = matcher.members(s);
        for (std::uint32_t b : members) {
          if (ranking.rank(agent_id(b)) > r) matcher.unassign(b);
        }
      }
      ms = matcher.augment(order, adj, is_present, allowed, trace.ms_total);
      if (ms != trace.ms_total || options.skip_rejection == rejections) {
        matcher = saved;
        bound = saved_bound;
        present[idx(i)] = true;
      }
    } else {
      auto candidate = rejected;
      candidate.push_back(i);
      ms = max_matching_size(reduced_without(inst, cats, candidate, options.excluded));
    }

    bool reject = ms == trace.ms_total;
    if (reject && options.skip_rejection == rejections++) reject = false;
    if (reject) rejected.push_back(i);
    trace.decisions.push_back({i, reject, ms});
  }

  std::sort(rejected.begin(), rejected.end());
  trace.rejected = rejected;
  const auto final_graph = reduced_without(inst, cats, rejected, options.excluded);
  return {max_matching(final_graph, inst.baseline()), std::move(trace)};
}

RrResult rr(const Instance& inst) {
  const auto cats = inst.all_categories();
  return rr(inst, cats);
}

Instance split_unreserved(const Instance& inst, UnreservedSplit split) {
  const auto first = inst.unreserved_first();
  const auto last = inst.unreserved_last();
  if (!first && !last) throw PreconditionError("instance has no unreserved category");
  if (split.first + split.last != inst.unreserved_quota()) {
    throw PreconditionError("unreserved split " + std::to_string(split.first) + "+" +
                            std::to_string(split.last) + " does not add up to " +
                            std::to_string(inst.unreserved_quota()) + " unreserved units");
  }

  std::string base = inst.category(last ? *last : *first).name;
  if (base.size() > 2 && (base.ends_with("^1") || base.ends_with("^2"))) base.resize(base.size() - 2);

  auto cats = inst.categories();
  const auto baseline_rank = PriorityRanking::strict(inst.agent_count(), inst.baseline());
  if (first) {
    cats[idx(*first)].quota = split.first;
  } else {
    cats.push_back({base + "^1", CategoryKind::unreserved_first, split.first, baseline_rank});
  }
  if (last) {
    cats[idx(*last)].quota = split.last;
  } else {
    cats.push_back({base + "^2", CategoryKind::unreserved_last, split.last, baseline_rank});
  }
  return Instance(inst.agent_names(), std::move(cats), inst.baseline());
}

Matching srr(const Instance& inst, UnreservedSplit split) {
  const Instance s = split_unreserved(inst, split);
  const std::size_t n = s.agent_count();
  const auto pref = s.preferential_categories();
  const auto order = baseline_order(s);

  // Phase 1: hand first-round unreserved units to the highest-baseline agents
  // the preferential categories can do without.
  const auto adj = ranked_adjacency(s, pref);
  std::vector<bool> present(n, true);
  const auto is_present = [&present](std::uint32_t a) { return present[a]; };
  const auto any_edge = [](std::uint32_t, const Edge&) { return true; };
  BMatcher matcher(n, quotas_of(s, pref));
  const std::size_t best = matcher.augment(order, adj, is_present, any_edge);

  std::vector<AgentId> early;
  for (AgentId i : s.baseline()) {
    if (early.size() >= split.first) break;
    const BMatcher saved = matcher;
    present[idx(i)] = false;
    matcher.unassign(idx(i));
    if (matcher.augment(order, adj, is_present, any_edge, best) == best) {
      early.push_back(i);
    } else {
      matcher = saved;
      present[idx(i)] = true;
    }
  }

  // Phase 2: reverse rejecting over the preferential categories.
  RrOptions options;
  options.excluded = early;
  Matching out = rr(s, pref, options).matching;

  // Phase 3: last-round unreserved units by baseline.
  const CategoryId first_cat = *s.unreserved_first();
  const CategoryId last_cat = *s.unreserved_last();
  for (AgentId a : early) out.assign(a, first_cat);
  std::size_t remaining = split.last;
  for (AgentId a : s.baseline()) {
    if (remaining == 0) break;
    if (!out.matched(a)) {
      out.assign(a, last_cat);
      --remaining;
    }
  }
  return out;
}

Matching soft_reserves(const Instance& inst, UnreservedSplit split) {
  for (CategoryId c : inst.preferential_categories()) {
    const auto& ranking = inst.category(c).priority;
    for (AgentId a : inst.baseline()) {
      for (AgentId b : inst.baseline()) {
        if (ranking.eligible(a) || ranking.eligible(b)) continue;
        if (ranking.rank(a) < ranking.rank(b) && !inst.baseline_prefers(a, b)) {
          throw PreconditionError("ranking of '" + inst.category(c).name +
                                  "' orders ineligible agents against the baseline");
        }
      }
    }
  }

  const Instance s = split_unreserved(inst, split);
  Matching out = srr(inst, split);
  const auto pref = s.preferential_categories();
  std::vector<std::size_t> load(s.category_count(), 0);
  for (const auto& [a, c] : out.pairs()) ++load[idx(c)];

  for (AgentId a : s.baseline()) {
    if (out.matched(a)) continue;
    for (CategoryId c : pref) {
      if (load[idx(c)] < s.category(c).quota) {
        out.assign(a, c);
        ++load[idx(c)];
        break;
      }
    }
  }
  return out;
}

namespace {

// The preferential category an agent is eligible for, if any.
std::optional<CategoryId> reserve_of(const Instance& inst, AgentId a) {
  for (CategoryId c : inst.preferential_categories()) {
    if (eligible(inst, a, c)) return c;
  }
  return std::nullopt;
}

}  // namespace

void require_reserve_preconditions(const Instance& inst) {
  const auto pref = inst.preferential_categories();
  for (AgentId a : inst.baseline()) {
    const auto count = std::count_if(pref.begin(), pref.end(),
                                     [&](CategoryId c) { return eligible(inst, a, c); });
    if (count > 1) {
      throw PreconditionError("agent '" + inst.agent_name(a) +
                              "' is eligible for more than one preferential category");
    }
  }
  for (CategoryId c : pref) {
    const auto& ranking = inst.category(c).priority;
    std::optional<AgentId> previous;
    for (AgentId a : inst.baseline()) {
      if (!ranking.eligible(a)) continue;
      if (previous && !(ranking.rank(*previous) < ranking.rank(a))) {
        throw PreconditionError("ranking of '" + inst.category(c).name +
                                "' is not consistent with the baseline");
      }
      previous = a;
    }
  }
}

Matching minimum_guarantees(const Instance& inst) {
  require_reserve_preconditions(inst);
  const Instance s = split_unreserved(inst, {0, inst.unreserved_quota()});
  const CategoryId last = *s.unreserved_last();
  std::vector<std::size_t> load(s.category_count(), 0);
  Matching out(s.agent_count());

  for (AgentId a : s.baseline()) {
    const auto c = reserve_of(s, a);
    if (c && load[idx(*c)] < s.category(*c).quota) {
      out.assign(a, *c);
      ++load[idx(*c)];
    } else if (load[idx(last)] < s.category(last).quota) {
      out.assign(a, last);
      ++load[idx(last)];
    }
  }
  return out;
}

Matching over_and_above(const Instance& inst) {
  require_reserve_preconditions(inst);
  const Instance s = split_unreserved(inst, {inst.unreserved_quota(), 0});
  const CategoryId first = *s.unreserved_first();
  const std::size_t n = s.agent_count();
  Matching out(n);
  std::size_t used = 0;

  for (AgentId a : s.baseline()) {
    if (used >= s.category(first).quota) break;
    if (const auto c = reserve_of(s, a)) {
      std::size_t others = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (agent_id(j) != a && !out.matched(agent_id(j)) && eligible(s, agent_id(j), *c)) ++others;
      }
      if (others < s.category(*c).quota) continue;
    }
    out.assign(a, first);
    ++used;
  }

  for (CategoryId c : s.preferential_categories()) {
    const auto& ranking = s.category(c).priority;
    std::vector<AgentId> pool;
    for (AgentId a : s.baseline()) {
      if (!out.matched(a) && ranking.eligible(a)) pool.push_back(a);
    }
    std::stable_sort(pool.begin(), pool.end(),
                     [&](AgentId x, AgentId y) { return ranking.rank(x) < ranking.rank(y); });
    const std::size_t take = std::min(pool.size(), s.category(c).quota);
    for (std::size_t k = 0; k < take; ++k) out.assign(pool[k], c);
  }
  return out;
}

Matching deferred_acceptance(const Instance& inst, const Preferences& prefs) {
  const std::size_t n = inst.agent_count();
  if (prefs.size() != n) throw PreconditionError("preferences must list every agent");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(inst.category_count(), false);
    for (CategoryId c : prefs[i]) {
      if (idx(c) >= inst.category_count()) throw PreconditionError("preference names an unknown category");
      if (!eligible(inst, agent_id(i), c)) {
        throw PreconditionError("agent '" + inst.agent_name(agent_id(i)) +
                                "' lists ineligible category '" + inst.category(c).name + "'");
      }
      if (seen[idx(c)]) throw PreconditionError("preference lists a category twice");
      seen[idx(c)] = true;
    }
  }

  // Lower key is better: category rank first, baseline position on ties.
  const auto worse = [&inst](CategoryId c, AgentId a, AgentId b) {
    const auto& r = inst.category(c).priority;
    if (r.rank(a) != r.rank(b)) return r.rank(a) > r.rank(b);
    return inst.baseline_position(a) > inst.baseline_position(b);
  };

  std::vector<std::size_t> next(n, 0);
  std::vector<std::vector<AgentId>> held(inst.category_count());
  std::vector<AgentId> free(inst.baseline().rbegin(), inst.baseline().rend());
  while (!free.empty()) {
    const AgentId a = free.back();
    free.pop_back();
    if (next[idx(a)] >= prefs[idx(a)].size()) continue;
    const CategoryId c = prefs[idx(a)][next[idx(a)]++];
    auto& h = held[idx(c)];
    h.push_back(a);
    if (h.size() > inst.category(c).quota) {
      auto worst = std::max_element(h.begin(), h.end(),
                                    [&](AgentId x, AgentId y) { return worse(c, y, x); });
      free.push_back(*worst);
      h.erase(worst);
    }
  }

  Matching out(n);
  for (std::size_t c = 0; c < held.size(); ++c) {
    for (AgentId a : held[c]) out.assign(a, category_id(c));
  }
  return out;
}

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::rr:
      return "rr";
    case RuleKind::srr:
      return "srr";
    case RuleKind::mg:
      return "mg";
    case RuleKind::oaa:
      return "oaa";
    case RuleKind::da:
      return "da";
    case RuleKind::soft:
      return "soft";
  }
  return "?";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
  for (RuleKind k : {RuleKind::rr, RuleKind::srr, RuleKind::mg, RuleKind::oaa, RuleKind::da,
                     RuleKind::soft}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

Instance output_instance(const RuleSpec& rule, const Instance& inst) {
  switch (rule.kind) {
    case RuleKind::srr:
    case RuleKind::soft:
      return split_unreserved(inst, rule.split);
    case RuleKind::mg:
      return split_unreserved(inst, {0, inst.unreserved_quota()});
    case RuleKind::oaa:
      return split_unreserved(inst, {inst.unreserved_quota(), 0});
    case RuleKind::rr:
    case RuleKind::da:
      break;
  }
  return inst;
}

Matching run_rule(const RuleSpec& rule, const Instance& inst) {
  switch (rule.kind) {
    case RuleKind::rr: {
      const auto cats = inst.all_categories();
      return rr(inst, cats, rule.rr_options).matching;
    }
    case RuleKind::srr:
      return srr(inst, rule.split);
    case RuleKind::soft:
      return soft_reserves(inst, rule.split);
    case RuleKind::mg:
      return minimum_guarantees(inst);
    case RuleKind::oaa:
      return over_and_above(inst);
    case RuleKind::da:
      return deferred_acceptance(inst, rule.prefs);
  }
  throw PreconditionError("unknown rule");
}

}  // namespace rationing
