#include "rationing/model.hpp"

#include <algorithm>
#include <set>

namespace rationing {

std::string_view to_string(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::preferential:
      return "preferential";
    case CategoryKind::unreserved_first:
      return "unreserved_first";
    case CategoryKind::unreserved_last:
      return "unreserved_last";
  }
  return "?";
}

PriorityRanking::PriorityRanking(std::size_t n_agents, std::vector<std::vector<AgentId>> tiers,
                                 std::size_t cutoff)
    : tiers_(std::move(tiers)), cutoff_(cutoff) {
  if (cutoff_ > tiers_.size()) {
    throw ValidationError("ranking cutoff exceeds number of tiers");
  }
  rank_.assign(n_agents, static_cast<Rank>(cutoff_));
  std::vector<bool> seen(n_agents, false);
  for (std::size_t t = 0; t < tiers_.size(); ++t) {
    auto& tier = tiers_[t];
    if (tier.empty()) throw ValidationError("ranking has an empty tier");
    std::sort(tier.begin(), tier.end());
    for (AgentId a : tier) {
      if (idx(a) >= n_agents) throw ValidationError("ranking names an unknown agent");
      if (seen[idx(a)]) throw ValidationError("agent appears twice in a ranking");
      seen[idx(a)] = true;
      rank_[idx(a)] = static_cast<Rank>(t < cutoff_ ? t : t + 1);
    }
  }
}

PriorityRanking PriorityRanking::strict(std::size_t n_agents, const std::vector<AgentId>& order) {
  std::vector<std::vector<AgentId>> tiers;
  tiers.reserve(order.size());
  for (AgentId a : order) tiers.push_back({a});
  const std::size_t cutoff = tiers.size();
  return PriorityRanking(n_agents, std::move(tiers), cutoff);
}

std::optional<std::size_t> PriorityRanking::tier_of(AgentId a) const {
  const Rank r = rank_[idx(a)];
  if (r < cutoff_) return r;
  if (r == cutoff_) return std::nullopt;
  return r - 1;
}

bool strictly_prefers(const PriorityRanking& r, Contender a, Contender b) {
  const auto position = [&](Contender x) { return x ? r.rank(*x) : r.empty_rank(); };
  return position(a) < position(b);
}

Instance::Instance(std::vector<std::string> agent_names, std::vector<Category> categories,
                   std::vector<AgentId> baseline)
    : agent_names_(std::move(agent_names)),
      categories_(std::move(categories)),
      baseline_(std::move(baseline)) {
  const std::size_t n = agent_names_.size();
  {
    std::set<std::string_view> names;
    for (const auto& name : agent_names_) {
      if (!names.insert(name).second) throw ValidationError("duplicate agent name '" + name + "'");
    }
  }
  {
    std::set<std::string_view> names;
    for (const auto& cat : categories_) {
      if (!names.insert(cat.name).second) {
        throw ValidationError("duplicate category name '" + cat.name + "'");
      }
    }
  }
  if (baseline_.size() != n) throw ValidationError("baseline is not a permutation of the agents");
  baseline_pos_.assign(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t a = idx(baseline_[p]);
    if (a >= n || baseline_pos_[a] != n) {
      throw ValidationError("baseline is not a permutation of the agents");
    }
    baseline_pos_[a] = p;
  }

  int first = 0;
  int last = 0;
  for (const auto& cat : categories_) {
    if (cat.priority.agent_count() != n) {
      throw ValidationError("ranking of '" + cat.name + "' has wrong agent count");
    }
    if (cat.kind == CategoryKind::preferential) continue;
    (cat.kind == CategoryKind::unreserved_first ? first : last)++;
    if (!(cat.priority == PriorityRanking::strict(n, baseline_))) {
      throw ValidationError("unreserved category '" + cat.name +
                            "' must rank all agents by the baseline");
    }
  }
  if (first > 1 || last > 1) {
    throw ValidationError("at most one unreserved category of each kind is allowed");
  }
}

std::vector<CategoryId> Instance::all_categories() const {
  std::vector<CategoryId> out;
  for (std::size_t c = 0; c < categories_.size(); ++c) out.push_back(category_id(c));
  return out;
}

std::vector<CategoryId> Instance::preferential_categories() const {
  std::vector<CategoryId> out;
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    if (categories_[c].kind == CategoryKind::preferential) out.push_back(category_id(c));
  }
  return out;
}

namespace {
std::optional<CategoryId> find_kind(const std::vector<Category>& cats, CategoryKind kind) {
  for (std::size_t c = 0; c < cats.size(); ++c) {
    if (cats[c].kind == kind) return category_id(c);
  }
  return std::nullopt;
}
}  // namespace

std::optional<CategoryId> Instance::unreserved_first() const {
  return find_kind(categories_, CategoryKind::unreserved_first);
}

std::optional<CategoryId> Instance::unreserved_last() const {
  return find_kind(categories_, CategoryKind::unreserved_last);
}

std::size_t Instance::unreserved_quota() const {
  std::size_t q = 0;
  for (const auto& cat : categories_) {
    if (cat.kind != CategoryKind::preferential) q += cat.quota;
  }
  return q;
}

std::optional<AgentId> Instance::find_agent(std::string_view name) const {
  for (std::size_t i = 0; i < agent_names_.size(); ++i) {
    if (agent_names_[i] == name) return agent_id(i);
  }
  return std::nullopt;
}

std::optional<CategoryId> Instance::find_category(std::string_view name) const {
  for (std::size_t c = 0; c < categories_.size(); ++c) {
    if (categories_[c].name == name) return category_id(c);
  }
  return std::nullopt;
}

Instance Instance::with_priority(CategoryId c, PriorityRanking ranking) const {
  auto cats = categories_;
  cats[idx(c)].priority = std::move(ranking);
  return Instance(agent_names_, std::move(cats), baseline_);
}

Instance Instance::with_baseline(std::vector<AgentId> baseline) const {
  auto cats = categories_;
  for (auto& cat : cats) {
    if (cat.kind != CategoryKind::preferential) {
      cat.priority = PriorityRanking::strict(agent_count(), baseline);
    }
  }
  return Instance(agent_names_, std::move(cats), std::move(baseline));
}

Instance Instance::with_quotas(const std::vector<std::size_t>& quotas) const {
  if (quotas.size() != categories_.size()) throw ValidationError("quota vector has wrong length");
  auto cats = categories_;
  for (std::size_t c = 0; c < cats.size(); ++c) cats[c].quota = quotas[c];
  return Instance(agent_names_, std::move(cats), baseline_);
}

bool eligible(const Instance& inst, AgentId i, CategoryId c) {
  return inst.category(c).priority.eligible(i);
}

std::size_t Matching::size() const {
  return static_cast<std::size_t>(
      std::count_if(assignment_.begin(), assignment_.end(), [](const auto& c) { return c.has_value(); }));
}

std::size_t Matching::load(CategoryId c) const {
  return static_cast<std::size_t>(std::count(assignment_.begin(), assignment_.end(), std::optional{c}));
}

std::vector<AgentId> Matching::assigned_to(CategoryId c) const {
  std::vector<AgentId> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == c) out.push_back(agent_id(i));
  }
  return out;
}

std::vector<std::pair<AgentId, CategoryId>> Matching::pairs() const {
  std::vector<std::pair<AgentId, CategoryId>> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i]) out.emplace_back(agent_id(i), *assignment_[i]);
  }
  return out;
}

void Matching::validate(const Instance& inst) const {
  if (assignment_.size() != inst.agent_count()) {
    throw ValidationError("matching covers a different number of agents than the instance");
  }
  std::vector<std::size_t> load(inst.category_count(), 0);
  for (const auto& c : assignment_) {
    if (!c) continue;
    if (idx(*c) >= inst.category_count()) throw ValidationError("matching uses an unknown category");
    ++load[idx(*c)];
  }
  for (std::size_t c = 0; c < load.size(); ++c) {
    if (load[c] > inst.categories()[c].quota) {
      throw ValidationError("matching exceeds the quota of '" + inst.categories()[c].name + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Manipulations

namespace {

PriorityRanking edit_ranking(const PriorityRanking& r, AgentId agent, const CategoryEdit& edit) {
  if (std::holds_alternative<Unchanged>(edit)) return r;

  const auto current = r.tier_of(agent);
  const auto& tiers = r.tiers();
  const std::size_t cutoff = r.cutoff();
  std::optional<Demote> demote;

  if (std::holds_alternative<Hide>(edit)) {
    if (!current) return r;
    if (*current >= cutoff) {
      throw ValidationError("hiding an agent ranked below the empty set would raise it");
    }
  } else {
    demote = std::get<Demote>(edit);
    if (!current) throw ValidationError("cannot demote an agent absent from the ranking");
    if (demote->tier >= tiers.size()) throw ValidationError("demotion target tier out of range");
    if (demote->tier < *current || (demote->tier == *current && !demote->below)) {
      throw ValidationError("demotion must move the agent strictly down");
    }
  }

  // Rebuild the tier list; a new tier "below" t stays on t's side of the empty set.
  std::vector<std::vector<AgentId>> rebuilt;
  std::size_t new_cutoff = 0;
  const auto emit = [&](std::vector<AgentId> tier, bool eligible_side) {
    if (tier.empty()) return;
    rebuilt.push_back(std::move(tier));
    if (eligible_side) ++new_cutoff;
  };
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    std::vector<AgentId> tier;
    for (AgentId a : tiers[t]) {
      if (a != agent) tier.push_back(a);
    }
    if (demote && !demote->below && demote->tier == t) tier.push_back(agent);
    emit(std::move(tier), t < cutoff);
    if (demote && demote->below && demote->tier == t) emit({agent}, t < cutoff);
  }
  PriorityRanking out(r.agent_count(), std::move(rebuilt), new_cutoff);
  if (out == r) throw ValidationError("demotion leaves the ranking unchanged");
  return out;
}

}  // namespace

Instance apply_manipulation(const Instance& inst, const Manipulation& m) {
  if (idx(m.agent) >= inst.agent_count()) throw ValidationError("manipulation names an unknown agent");
  if (m.edits.size() > inst.category_count()) throw ValidationError("too many manipulation edits");
  bool changed = false;
  auto cats = inst.categories();
  for (std::size_t c = 0; c < m.edits.size(); ++c) {
    if (std::holds_alternative<Unchanged>(m.edits[c])) continue;
    if (cats[c].kind != CategoryKind::preferential) {
      throw ValidationError("unreserved rankings follow the baseline and cannot be manipulated");
    }
    cats[c].priority = edit_ranking(cats[c].priority, m.agent, m.edits[c]);
    changed = true;
  }
  if (!changed) return inst;
  return Instance(inst.agent_names(), std::move(cats), inst.baseline());
}

bool is_priority_decrease(const Instance& before, const Instance& after, AgentId agent) {
  if (before.agent_count() != after.agent_count() ||
      before.category_count() != after.category_count() || before.baseline() != after.baseline()) {
    return false;
  }
  const std::size_t n = before.agent_count();
  for (std::size_t c = 0; c < before.category_count(); ++c) {
    const auto& a = before.categories()[c];
    const auto& b = after.categories()[c];
    if (a.quota != b.quota || a.kind != b.kind || a.name != b.name) return false;
    const auto weakly = [](const PriorityRanking& r, Contender x, Contender y) {
      return !strictly_prefers(r, y, x);
    };
    // Contenders: every agent plus the empty set (index n).
    const auto contender = [n](std::size_t k) -> Contender {
      return k == n ? Contender{} : Contender{agent_id(k)};
    };
    for (std::size_t j = 0; j <= n; ++j) {
      if (j != n && agent_id(j) == agent) continue;
      for (std::size_t k = 0; k <= n; ++k) {
        if (k != n && agent_id(k) == agent) continue;
        if (weakly(a.priority, contender(j), contender(k)) !=
            weakly(b.priority, contender(j), contender(k))) {
          return false;
        }
      }
      if (weakly(a.priority, contender(j), agent) && !weakly(b.priority, contender(j), agent)) {
        return false;
      }
      if (strictly_prefers(a.priority, contender(j), agent) &&
          !strictly_prefers(b.priority, contender(j), agent)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Instance> enumerate_priority_decreases(const Instance& inst, AgentId agent,
                                                   std::size_t budget) {
  std::vector<Instance> out;
  const auto push_unique = [&](Instance candidate) {
    if (candidate == inst) return;
    if (std::find(out.begin(), out.end(), candidate) != out.end()) return;
    out.push_back(std::move(candidate));
  };

  std::vector<std::size_t> hideable;
  for (CategoryId c : inst.preferential_categories()) {
    if (eligible(inst, agent, c)) hideable.push_back(idx(c));
  }
  if (hideable.size() >= 8 * sizeof(std::size_t) - 1) {
    throw PreconditionError("too many eligible categories to enumerate hide subsets");
  }
  const std::size_t subsets = std::size_t{1} << hideable.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    Manipulation m{agent, std::vector<CategoryEdit>(inst.category_count(), Unchanged{})};
    for (std::size_t b = 0; b < hideable.size(); ++b) {
      if (mask & (std::size_t{1} << b)) m.edits[hideable[b]] = Hide{};
    }
    push_unique(apply_manipulation(inst, m));
  }

  std::size_t demotions = 0;
  for (CategoryId c : inst.preferential_categories()) {
    const auto& r = inst.category(c).priority;
    const auto current = r.tier_of(agent);
    if (!current) continue;
    for (std::size_t t = *current; t < r.tiers().size(); ++t) {
      for (bool below : {false, true}) {
        if (demotions >= budget) return out;
        if (t == *current && (!below || r.tiers()[t].size() == 1)) continue;
        Manipulation m{agent, std::vector<CategoryEdit>(inst.category_count(), Unchanged{})};
        m.edits[idx(c)] = Demote{t, below};
        const auto before = out.size();
        push_unique(apply_manipulation(inst, m));
        if (out.size() > before) ++demotions;
      }
    }
  }
  return out;
}

}  // namespace rationing
