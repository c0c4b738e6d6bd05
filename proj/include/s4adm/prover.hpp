#pragma once

// S4 theoremhood by a signed tableau over negation normal form.
//
// A world is a set of NNF formulas. Saturation applies the conjunction rule,
// the T rule (□A adds A) and branches on disjunctions. Every ◇C not already
// satisfied locally opens a successor {C} ∪ {□B in the world}. A successor whose
// starting set equals that of a world on the current path is linked back to it
// instead of being expanded. Only unsatisfiable starting sets are cached: an
// unsatisfiable verdict never depends on a loop link, a satisfiable one can.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"
#include "s4adm/kripke.hpp"

namespace s4adm {

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

struct ProofResult {
  bool theorem = false;
  /// Countermodel when not a theorem; world 0 falsifies the input.
  std::optional<KripkeModel> countermodel;
  std::size_t nodes = 0;
};

namespace detail {

class Tableau {
 public:
  explicit Tableau(std::size_t node_cap) : cap_(node_cap) {}

  /// Satisfiability of `f`; on success the model is left in the arena.
  bool satisfiable(const Formula& f) {
    root_ = intern_nnf(f, true);
    const std::size_t words = (table_.size() + 63) / 64;
    Set start(words, 0);
    set_bit(start, root_);
    return solve(start);
  }

  KripkeModel extract(const std::set<VarIndex>& vars) const {
    KripkeModel m;
    for (std::size_t i = 0; i < arena_.size(); ++i) m.add_world(static_cast<std::uint32_t>(i));
    for (VarIndex v : vars) m.declare(v);
    for (std::size_t i = 0; i < arena_.size(); ++i) {
      for (std::size_t id = 0; id < table_.size(); ++id) {
        if (!has_bit(arena_[i].full, id)) continue;
        const Entry& e = table_[id];
        if (e.kind == K::Lit && e.positive) m.set_true(e.var, i);
      }
      for (std::size_t c : arena_[i].succ) m.add_edge(i, c);
    }
    m.close_s4();
    return m;
  }

  std::size_t expansions() const noexcept { return expansions_; }

 private:
  enum class K : std::uint8_t { Lit, Top, Bot, And, Or, Box, Dia };
  struct Entry {
    K kind;
    VarIndex var = 0;
    bool positive = true;
    std::size_t a = 0, b = 0;
    auto key() const { return std::tuple(kind, var, positive, a, b); }
  };
  using Set = std::vector<std::uint64_t>;

  struct World {
    Set start;
    Set full;
    std::vector<std::size_t> succ;
  };

  static bool has_bit(const Set& s, std::size_t i) { return (s[i / 64] >> (i % 64)) & 1U; }
  static void set_bit(Set& s, std::size_t i) { s[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t intern(Entry e) {
    auto [it, fresh] = index_.try_emplace(e.key(), table_.size());
    if (fresh) table_.push_back(e);
    return it->second;
  }

  std::size_t intern_nnf(const Formula& f, bool pos) {
    using FK = Formula::Kind;
    switch (f.kind()) {
      case FK::Var: return intern({K::Lit, f.index(), pos});
      case FK::Bottom: return intern({pos ? K::Bot : K::Top});
      case FK::Not: return intern_nnf(f.child(), !pos);
      case FK::And:
        return intern({pos ? K::And : K::Or, 0, true, intern_nnf(f.left(), pos),
                       intern_nnf(f.right(), pos)});
      case FK::Or:
        return intern({pos ? K::Or : K::And, 0, true, intern_nnf(f.left(), pos),
                       intern_nnf(f.right(), pos)});
      case FK::Implies:
        return intern({pos ? K::Or : K::And, 0, true, intern_nnf(f.left(), !pos),
                       intern_nnf(f.right(), pos)});
      case FK::Iff: {
        const std::size_t ap = intern_nnf(f.left(), true), an = intern_nnf(f.left(), false);
        const std::size_t bp = intern_nnf(f.right(), true), bn = intern_nnf(f.right(), false);
        if (pos)
          return intern({K::Or, 0, true, intern({K::And, 0, true, ap, bp}),
                         intern({K::And, 0, true, an, bn})});
        return intern({K::Or, 0, true, intern({K::And, 0, true, ap, bn}),
                       intern({K::And, 0, true, an, bp})});
      }
      case FK::Box: return intern({pos ? K::Box : K::Dia, 0, true, intern_nnf(f.child(), pos)});
      case FK::Diamond:
        return intern({pos ? K::Dia : K::Box, 0, true, intern_nnf(f.child(), pos)});
    }
    return intern({K::Top});
  }

  std::optional<std::size_t> complement(std::size_t id) {
    const Entry& e = table_[id];
    if (e.kind != K::Lit) return std::nullopt;
    auto it = index_.find(Entry{K::Lit, e.var, !e.positive}.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds `id` to `s`; false on an immediate clash.
  bool add(Set& s, std::size_t id) {
    if (table_[id].kind == K::Bot) return false;
    set_bit(s, id);
    if (auto c = complement(id); c && has_bit(s, *c)) return false;
    return true;
  }

  bool solve(const Set& start) {
    if (++expansions_ > cap_)
      throw ResourceLimit("tableau node cap of " + std::to_string(cap_) + " exceeded");
    const std::size_t me = arena_.size();
    arena_.push_back(World{start, {}, {}});
    path_.push_back(me);
    const bool ok = expand(start, me);
    path_.pop_back();
    if (!ok) {
      arena_.resize(me);
      unsat_.insert(start);
    }
    return ok;
  }

  bool expand(Set s, std::size_t me) {
    // Deterministic saturation: ∧ and □ exhaustively, then the first open ∨.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t id = 0; id < table_.size(); ++id) {
        if (!has_bit(s, id)) continue;
        const Entry& e = table_[id];
        if (e.kind == K::Bot) return false;
        if (e.kind == K::And) {
          for (std::size_t part : {e.a, e.b}) {
            if (has_bit(s, part)) continue;
            if (!add(s, part)) return false;
            changed = true;
          }
        } else if (e.kind == K::Box && !has_bit(s, e.a)) {
          if (!add(s, e.a)) return false;
          changed = true;
        } else if (e.kind == K::Lit) {
          if (auto c = complement(id); c && has_bit(s, *c)) return false;
        }
      }
    }
    for (std::size_t id = 0; id < table_.size(); ++id) {
      if (!has_bit(s, id)) continue;
      const Entry& e = table_[id];
      if (e.kind != K::Or || has_bit(s, e.a) || has_bit(s, e.b)) continue;
      const std::size_t mark = arena_.size();
      for (std::size_t pick : {e.a, e.b}) {
        Set branch = s;
        if (add(branch, pick) && expand(std::move(branch), me)) return true;
        arena_.resize(mark);
      }
      return false;
    }

    // Fully saturated and clash-free: open the modal successors.
    Set boxes(s.size(), 0);
    for (std::size_t id = 0; id < table_.size(); ++id)
      if (has_bit(s, id) && table_[id].kind == K::Box) set_bit(boxes, id);

    std::vector<Set> pending;
    for (std::size_t id = 0; id < table_.size(); ++id) {
      if (!has_bit(s, id) || table_[id].kind != K::Dia) continue;
      if (has_bit(s, table_[id].a)) continue;  // reflexivity already witnesses it
      Set child = boxes;
      set_bit(child, table_[id].a);
      if (unsat_.contains(child)) return false;
      pending.push_back(std::move(child));
    }

    std::vector<std::size_t> succ;
    const std::size_t mark = arena_.size();
    for (const Set& child : pending) {
      auto loop = std::find_if(path_.begin(), path_.end(),
                               [&](std::size_t w) { return arena_[w].start == child; });
      if (loop != path_.end()) {
        succ.push_back(*loop);
        continue;
      }
      const std::size_t at = arena_.size();
      if (!solve(child)) {
        arena_.resize(mark);
        return false;
      }
      succ.push_back(at);
    }
    arena_[me].full = std::move(s);
    arena_[me].succ = std::move(succ);
    return true;
  }

  std::size_t cap_;
  std::size_t root_ = 0;
  std::vector<Entry> table_;
  std::map<std::tuple<K, VarIndex, bool, std::size_t, std::size_t>, std::size_t> index_;
  std::vector<World> arena_;
  std::vector<std::size_t> path_;
  std::set<Set> unsat_;
  std::size_t expansions_ = 0;
};

}  // namespace detail

/// Decides ⊢S4 f. Throws ResourceLimit when more than `node_cap` worlds are expanded.
inline ProofResult prove(const Formula& f, std::size_t node_cap = kDefaultNodeCap) {
  detail::Tableau t(node_cap);
  ProofResult r;
  const bool sat = t.satisfiable(neg(f));
  r.nodes = t.expansions();
  r.theorem = !sat;
  if (sat) r.countermodel = t.extract(variables(f));
  return r;
}

inline bool is_theorem(const Formula& f, std::size_t node_cap = kDefaultNodeCap) {
  return prove(f, node_cap).theorem;
}

/// Satisfiable in some S4 model.
inline bool is_satisfiable(const Formula& f, std::size_t node_cap = kDefaultNodeCap) {
  return !is_theorem(neg(f), node_cap);
}

/// ⊬A and ⊢◇A.
inline bool has_property_star(const Formula& a, std::size_t node_cap = kDefaultNodeCap) {
  return is_theorem(dia(a), node_cap) && !is_theorem(a, node_cap);
}

/// Property (*) together with ⊢A↔□A.
inline bool has_property_star_star(const Formula& a, std::size_t node_cap = kDefaultNodeCap) {
  return has_property_star(a, node_cap) && is_theorem(iff(a, box(a)), node_cap);
}

}  // namespace s4adm
