#pragma once

// Rule systems {W1/J1, ..., Wm/Jm} standing for the substitutions that reject
// every W_i/J_i, the actions +J and -J that split such a set into disjoint
// parts, simplification, and a driver that splits until every part is either
// empty or of the form {W/(W-{i}) : i in W}.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/rnf.hpp"
#include "s4adm/supp.hpp"

namespace s4adm {

struct RuleEntry {
  IdSet w;
  IdSet j;
  friend bool operator==(const RuleEntry&, const RuleEntry&) = default;
  friend auto operator<=>(const RuleEntry&, const RuleEntry&) = default;
};

struct RuleSystem {
  unsigned n = 1;
  std::vector<RuleEntry> entries;
  friend bool operator==(const RuleSystem&, const RuleSystem&) = default;
};

/// Checks ids and J ⊆ W, sorts each set, drops repeated entries (first one kept).
inline RuleSystem make_system(unsigned n, std::vector<RuleEntry> entries) {
  check_arity(n);
  RuleSystem out{n, {}};
  for (auto& e : entries) {
    e.w = normalize(std::move(e.w));
    e.j = normalize(std::move(e.j));
    for (DisjunctId id : e.w) (void)Disjunct::from_id(n, id);
    if (!subset_of(e.j, e.w)) throw InputError("rule system entry has J outside W");
    if (std::find(out.entries.begin(), out.entries.end(), e) == out.entries.end())
      out.entries.push_back(std::move(e));
  }
  return out;
}

/// Some entry has W ⊆ J, so its conclusion follows from its premise outright.
inline bool trivially_empty(const RuleSystem& a) {
  for (const auto& e : a.entries)
    if (subset_of(e.w, e.j)) return true;
  return false;
}

/// A W in Supp2 with W ⊆ W_i and W meeting W_i \ J_i for every entry.
inline std::optional<IdSet> nonempty_witness(const RuleSystem& a, std::uint64_t cap = kDefaultSubsetCap) {
  WitnessQuery q{a.n, consistent_ids(a.n), {}, {}};
  for (const auto& e : a.entries) {
    q.universe = set_intersection(q.universe, e.w);
    q.meets.push_back(set_difference(e.w, e.j));
  }
  return find_any_witness(Family::Supp2, q, cap);
}

inline bool is_empty(const RuleSystem& a, std::uint64_t cap = kDefaultSubsetCap) {
  if (trivially_empty(a)) return true;
  return !nonempty_witness(a, cap);
}

/// Premises replaced by their intersection W, conclusions cut down to W, and
/// entries whose conclusion lies inside another's dropped.
inline RuleSystem simplify(const RuleSystem& a) {
  if (a.entries.empty()) return a;
  IdSet w = a.entries.front().w;
  for (const auto& e : a.entries) w = set_intersection(w, e.w);
  std::vector<RuleEntry> cut;
  for (const auto& e : a.entries) {
    RuleEntry c{w, set_intersection(e.j, w)};
    if (std::find(cut.begin(), cut.end(), c) == cut.end()) cut.push_back(std::move(c));
  }
  std::vector<RuleEntry> kept;
  for (std::size_t k = 0; k < cut.size(); ++k) {
    bool subsumed = false;
    for (std::size_t l = 0; l < cut.size() && !subsumed; ++l)
      subsumed = l != k && cut[k].j != cut[l].j && subset_of(cut[k].j, cut[l].j);
    if (!subsumed) kept.push_back(cut[k]);
  }
  return {a.n, std::move(kept)};
}

inline RuleSystem intersect(const RuleSystem& a, const RuleSystem& b) {
  if (a.n != b.n) throw InputError("rule systems have different variable counts");
  std::vector<RuleEntry> all = a.entries;
  all.insert(all.end(), b.entries.begin(), b.entries.end());
  return simplify(make_system(a.n, std::move(all)));
}

/// One shared W and conclusions exactly {W - {i} : i in W}.
inline bool is_canonical(const RuleSystem& a) {
  if (a.entries.empty()) return false;
  const IdSet& w = a.entries.front().w;
  if (w.empty()) return false;
  std::vector<IdSet> want;
  for (DisjunctId i : w) want.push_back(set_difference(w, {i}));
  std::vector<IdSet> have;
  for (const auto& e : a.entries) {
    if (e.w != w) return false;
    have.push_back(e.j);
  }
  std::sort(want.begin(), want.end());
  std::sort(have.begin(), have.end());
  have.erase(std::unique(have.begin(), have.end()), have.end());
  return want == have;
}

/// The 2^m branches of +J. Branch alpha has W_i/(J_i ∪ J) where bit i of alpha
/// is 0 and (J_i ∪ J)/J_i where it is 1.
inline std::vector<RuleSystem> action_plus(const RuleSystem& a, const IdSet& j) {
  const IdSet add = normalize(j);
  for (const auto& e : a.entries)
    if (!subset_of(add, e.w)) throw InputError("+J needs J inside every premise");
  const std::size_t m = a.entries.size();
  if (m >= 20) throw ResourceLimit("+J on " + std::to_string(m) + " entries");
  std::vector<RuleSystem> out;
  for (std::uint32_t alpha = 0; alpha < (1U << m); ++alpha) {
    std::vector<RuleEntry> es;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& e = a.entries[i];
      const IdSet grown = set_union(e.j, add);
      if ((alpha >> i) & 1U) es.push_back({grown, e.j});
      else es.push_back({e.w, grown});
    }
    out.push_back(make_system(a.n, std::move(es)));
  }
  return out;
}

/// The m + 1 branches of -J: the system with J removed everywhere, then for
/// each i the system extended by W_i/(W_i - J).
inline std::vector<RuleSystem> action_minus(const RuleSystem& a, const IdSet& j) {
  const IdSet cut = normalize(j);
  for (const auto& e : a.entries)
    if (e.j.size() >= e.w.size()) throw InputError("-J needs every conclusion strictly inside its premise");
  std::vector<RuleSystem> out;
  std::vector<RuleEntry> reduced;
  for (const auto& e : a.entries) reduced.push_back({set_difference(e.w, cut), set_difference(e.j, cut)});
  out.push_back(make_system(a.n, std::move(reduced)));
  for (const auto& e : a.entries) {
    std::vector<RuleEntry> es = a.entries;
    es.push_back({e.w, set_difference(e.w, cut)});
    out.push_back(make_system(a.n, std::move(es)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps over a list of systems, in the +i / -i / s notation

namespace detail {

inline bool plus_applies(const RuleSystem& a, DisjunctId i) {
  bool open = false;
  for (const auto& e : a.entries) {
    if (!std::binary_search(e.w.begin(), e.w.end(), i)) return false;
    open = open || !std::binary_search(e.j.begin(), e.j.end(), i);
  }
  return open;
}

inline bool minus_applies(const RuleSystem& a, DisjunctId i) {
  for (const auto& e : a.entries)
    if (std::binary_search(e.j.begin(), e.j.end(), i)) return true;
  return false;
}

inline std::vector<RuleSystem> without_repeats_and_trivia(std::vector<RuleSystem> branches) {
  std::vector<RuleSystem> out;
  for (auto& b : branches) {
    if (trivially_empty(b)) continue;
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace detail

/// Applies one step to every system it fits, replacing the system by its
/// branches in place. "+i" fits systems where i lies in every premise and
/// outside some conclusion; "-i" fits systems where i lies in some conclusion;
/// "s" simplifies everything. Branches that are trivially empty are dropped.
inline std::vector<RuleSystem> apply_step(const std::vector<RuleSystem>& systems, const std::string& step) {
  if (step == "s") {
    std::vector<RuleSystem> out;
    for (const auto& a : systems) out.push_back(simplify(a));
    return out;
  }
  if (step.size() < 2 || (step[0] != '+' && step[0] != '-'))
    throw InputError("unknown step '" + step + "'");
  DisjunctId i = 0;
  try {
    std::size_t used = 0;
    i = static_cast<DisjunctId>(std::stoul(step.substr(1), &used));
    if (used != step.size() - 1) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("unknown step '" + step + "'");
  }
  std::vector<RuleSystem> out;
  for (const auto& a : systems) {
    const bool plus = step[0] == '+';
    if (plus ? !detail::plus_applies(a, i) : !detail::minus_applies(a, i)) {
      out.push_back(a);
      continue;
    }
    auto branches = plus ? action_plus(a, {i}) : action_minus(a, {i});
    for (auto& b : detail::without_repeats_and_trivia(std::move(branches))) out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition driver

inline constexpr std::size_t kDefaultStepCap = 10'000;

enum class LeafKind { Canonical, Empty, Open };

inline const char* leaf_kind_name(LeafKind k) {
  switch (k) {
    case LeafKind::Canonical: return "canonical";
    case LeafKind::Empty: return "empty";
    case LeafKind::Open: return "open";
  }
  return "?";
}

struct Leaf {
  RuleSystem system;
  /// Steps from the root, e.g. "+2:1" for the second branch of +2, and "s"
  /// where simplification changed the system.
  std::vector<std::string> trace;
  LeafKind kind = LeafKind::Open;
};

struct Decomposition {
  RuleSystem root;
  std::vector<Leaf> leaves;
  std::size_t steps = 0;
  /// False when the step cap stopped the driver; unfinished parts are Open leaves.
  bool complete = true;
};

struct DecomposeOptions {
  std::size_t step_cap = kDefaultStepCap;
  std::uint64_t subset_cap = kDefaultSubsetCap;
};

namespace detail {

struct Action {
  char sign;
  DisjunctId i;
};

/// Lowest i with i in W - J and |W - J| >= 2 for some entry, else the lowest
/// i in W that sits in some conclusion and whose W/(W - {i}) is missing.
/// Expects a simplified system, so every premise is the same W.
inline std::optional<Action> choose_action(const RuleSystem& a) {
  std::optional<DisjunctId> best;
  for (const auto& e : a.entries) {
    const IdSet open = set_difference(e.w, e.j);
    if (open.size() >= 2 && (!best || open.front() < *best)) best = open.front();
  }
  if (best) return Action{'+', *best};
  const IdSet& w = a.entries.front().w;
  for (DisjunctId i : w) {
    if (!minus_applies(a, i)) continue;
    const RuleEntry target{w, set_difference(w, {i})};
    if (std::find(a.entries.begin(), a.entries.end(), target) == a.entries.end()) return Action{'-', i};
  }
  return std::nullopt;
}

}  // namespace detail

inline Decomposition decompose(const RuleSystem& root, const DecomposeOptions& opt = {}) {
  if (root.entries.empty()) throw InputError("rule system has no entries");
  Decomposition d{root, {}, 0, true};
  struct Item {
    RuleSystem system;
    std::vector<std::string> trace;
  };
  std::vector<Item> work{{root, {}}};
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    RuleSystem s = simplify(it.system);
    if (s != it.system) it.trace.push_back("s");
    if (is_empty(s, opt.subset_cap)) {
      d.leaves.push_back({std::move(s), std::move(it.trace), LeafKind::Empty});
      continue;
    }
    if (is_canonical(s)) {
      d.leaves.push_back({std::move(s), std::move(it.trace), LeafKind::Canonical});
      continue;
    }
    const auto act = detail::choose_action(s);
    if (!act || d.steps >= opt.step_cap) {
      d.complete = false;
      d.leaves.push_back({std::move(s), std::move(it.trace), LeafKind::Open});
      continue;
    }
    ++d.steps;
    auto branches = act->sign == '+' ? action_plus(s, {act->i}) : action_minus(s, {act->i});
    std::vector<RuleSystem> distinct;
    for (auto& b : branches)
      if (std::find(distinct.begin(), distinct.end(), b) == distinct.end()) distinct.push_back(std::move(b));
    for (std::size_t k = distinct.size(); k-- > 0;) {
      auto trace = it.trace;
      trace.push_back(std::string(1, act->sign) + std::to_string(act->i) + ":" + std::to_string(k));
      work.push_back({std::move(distinct[k]), std::move(trace)});
    }
  }
  std::stable_sort(d.leaves.begin(), d.leaves.end(),
                   [](const Leaf& x, const Leaf& y) { return x.trace < y.trace; });
  return d;
}

}  // namespace s4adm
