#pragma once

// Disjuncts over n variables and the reduced normal form of inference rules.
//
// A disjunct fixes, for every variable p_i, whether p_i holds (theta) and whether
// ◇p_i holds (theta_d). Its id packs theta into the low n bits and theta_d into
// the next n bits, so for n = 1 the ids are
//   0 = ~p1 & ~<>p1   1 = p1 & ~<>p1 (inconsistent)   2 = ~p1 & <>p1   3 = p1 & <>p1.
// A disjunct is consistent iff theta ⊆ theta_d.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"

namespace s4adm {

using DisjunctId = std::uint32_t;
using IdSet = std::vector<DisjunctId>;  // sorted, duplicate free

inline constexpr unsigned kMaxVariables = 6;

inline void check_arity(unsigned n) {
  if (n < 1 || n > kMaxVariables)
    throw InputError("variable count " + std::to_string(n) + " outside 1.." +
                     std::to_string(kMaxVariables));
}

inline IdSet normalize(IdSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline IdSet set_union(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IdSet set_intersection(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IdSet set_difference(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool subset_of(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool intersects(const IdSet& a, const IdSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

struct Disjunct {
  unsigned n = 1;
  std::uint32_t theta = 0;
  std::uint32_t theta_d = 0;

  static Disjunct from_id(unsigned n, DisjunctId id) {
    check_arity(n);
    if (id >= (DisjunctId{1} << (2 * n)))
      throw InputError("disjunct id " + std::to_string(id) + " out of range for n = " +
                       std::to_string(n));
    const std::uint32_t mask = (1U << n) - 1;
    return {n, id & mask, (id >> n) & mask};
  }

  DisjunctId id() const noexcept { return theta | (theta_d << n); }
  bool consistent() const noexcept { return (theta & ~theta_d) == 0; }
  /// theta = theta_d: the world sees its own ◇-facts.
  bool reflexive() const noexcept { return theta == theta_d; }

  friend bool operator==(const Disjunct&, const Disjunct&) = default;
};

/// All 4^n disjuncts in id order.
inline std::vector<Disjunct> all_disjuncts(unsigned n) {
  check_arity(n);
  std::vector<Disjunct> out;
  for (DisjunctId id = 0; id < (DisjunctId{1} << (2 * n)); ++id) out.push_back(Disjunct::from_id(n, id));
  return out;
}

/// The 3^n disjuncts with theta ⊆ theta_d, in id order.
inline std::vector<Disjunct> consistent_disjuncts(unsigned n) {
  std::vector<Disjunct> out;
  for (const auto& d : all_disjuncts(n))
    if (d.consistent()) out.push_back(d);
  return out;
}

inline IdSet consistent_ids(unsigned n) {
  IdSet out;
  for (const auto& d : consistent_disjuncts(n)) out.push_back(d.id());
  return out;
}

/// p-literals for 1..n followed by ◇p-literals for 1..n.
inline Formula disjunct_formula(const Disjunct& d) {
  std::vector<Formula> parts;
  for (unsigned i = 0; i < d.n; ++i) {
    const Formula p = var(i + 1);
    parts.push_back((d.theta >> i) & 1U ? p : neg(p));
  }
  for (unsigned i = 0; i < d.n; ++i) {
    const Formula p = dia(var(i + 1));
    parts.push_back((d.theta_d >> i) & 1U ? p : neg(p));
  }
  return conj_all(parts);
}

inline Formula disjunction_of(unsigned n, const IdSet& ids) {
  std::vector<Formula> parts;
  for (DisjunctId id : ids) parts.push_back(disjunct_formula(Disjunct::from_id(n, id)));
  return disj_all(parts);
}

/// ⋁I / ⋁J with J ⊆ I, or ⋁I / p_k.
struct RnfRule {
  unsigned n = 1;
  IdSet premise;
  IdSet conclusion;
  std::optional<VarIndex> conclusion_var;

  bool has_variable_conclusion() const noexcept { return conclusion_var.has_value(); }

  /// The conclusion as a disjunct set; p_k becomes {d in I : p_k in theta(d)}.
  IdSet conclusion_set() const {
    if (!conclusion_var) return conclusion;
    IdSet out;
    for (DisjunctId id : premise)
      if ((Disjunct::from_id(n, id).theta >> (*conclusion_var - 1)) & 1U) out.push_back(id);
    return out;
  }

  /// Checks ids and arity, sorts, restricts the conclusion set to the premise.
  void normalize_in_place() {
    check_arity(n);
    premise = normalize(std::move(premise));
    conclusion = normalize(std::move(conclusion));
    for (DisjunctId id : premise) (void)Disjunct::from_id(n, id);
    for (DisjunctId id : conclusion) (void)Disjunct::from_id(n, id);
    if (conclusion_var && (*conclusion_var < 1 || *conclusion_var > n))
      throw InputError("conclusion variable p" + std::to_string(*conclusion_var) +
                       " outside 1.." + std::to_string(n));
    conclusion = set_intersection(conclusion, premise);
  }

  Formula premise_formula() const { return disjunction_of(n, premise); }
  Formula conclusion_formula() const {
    return conclusion_var ? var(*conclusion_var) : disjunction_of(n, conclusion);
  }

  friend bool operator==(const RnfRule&, const RnfRule&) = default;
};

inline RnfRule make_rnf_rule(unsigned n, IdSet premise, IdSet conclusion) {
  RnfRule r{n, std::move(premise), std::move(conclusion), std::nullopt};
  r.normalize_in_place();
  return r;
}

inline RnfRule make_rnf_rule(unsigned n, IdSet premise, VarIndex conclusion) {
  RnfRule r{n, std::move(premise), {}, conclusion};
  r.normalize_in_place();
  return r;
}

// ---------------------------------------------------------------------------
// Rules in formula form

struct InferenceRule {
  std::vector<Formula> premises;
  Formula conclusion;
};

/// Reads `f1, f2, ... / g`; the premise list may be empty.
inline InferenceRule parse_rule(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw ParseError("expected '/' between premises and conclusion", text.size());
  if (text.find('/', slash + 1) != std::string_view::npos)
    throw ParseError("more than one '/'", text.find('/', slash + 1));
  InferenceRule r;
  const std::string_view lhs = text.substr(0, slash);
  std::size_t start = 0;
  if (lhs.find_first_not_of(" \t\r\n") != std::string_view::npos) {
    while (true) {
      const auto comma = lhs.find(',', start);
      const std::size_t len = comma == std::string_view::npos ? lhs.size() - start : comma - start;
      const std::string_view part = lhs.substr(start, len);
      try {
        r.premises.push_back(parse(part));
      } catch (const ParseError& e) {
        throw ParseError("premise: " + e.detail(), start + e.position());
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  try {
    r.conclusion = parse(text.substr(slash + 1));
  } catch (const ParseError& e) {
    throw ParseError("conclusion: " + e.detail(), slash + 1 + e.position());
  }
  return r;
}

inline std::string print(const InferenceRule& r, Notation style = Notation::Ascii) {
  std::string out;
  for (std::size_t i = 0; i < r.premises.size(); ++i) {
    if (i) out += ", ";
    out += print(r.premises[i], style);
  }
  out += out.empty() ? "/ " : " / ";
  out += print(r.conclusion, style);
  return out;
}

// ---------------------------------------------------------------------------
// Renaming transform

namespace detail {

/// Rewrites formulas into "flat" ones (Boolean combinations of p and ◇p) by
/// naming every non-atomic modal argument with a fresh variable.
class Renamer {
 public:
  explicit Renamer(VarIndex first_fresh) : next_(first_fresh) {}

  Formula flatten(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Var:
      case K::Bottom: return f;
      case K::Not: return neg(flatten(f.child()));
      case K::Diamond:
        if (f.child().is_var()) return f;
        return dia(name(f.child()));
      case K::Box: {
        const Formula& g = f.child();
        if (g.kind() == K::Not && g.child().is_var()) return neg(dia(g.child()));
        return neg(dia(name(neg(g))));
      }
      default: return Formula::binary(f.kind(), flatten(f.left()), flatten(f.right()));
    }
  }

  const std::vector<Formula>& definitions() const noexcept { return definitions_; }
  /// Fresh variable and the original subformula it names, in creation order.
  const std::vector<std::pair<VarIndex, Formula>>& named() const noexcept { return named_; }
  VarIndex next_fresh() const noexcept { return next_; }

 private:
  Formula name(const Formula& g) {
    if (auto it = names_.find(g); it != names_.end()) return it->second;
    const Formula x = var(next_++);
    names_.emplace(g, x);
    named_.emplace_back(x.index(), g);
    const Formula body = flatten(g);
    definitions_.push_back(iff(x, body));
    return x;
  }

  VarIndex next_;
  std::map<Formula, Formula> names_;
  std::vector<Formula> definitions_;
  std::vector<std::pair<VarIndex, Formula>> named_;
};

/// Classical value of a flat formula under the disjunct's literals.
inline bool eval_flat(const Formula& f, const Disjunct& d) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var: return (d.theta >> (f.index() - 1)) & 1U;
    case K::Bottom: return false;
    case K::Not: return !eval_flat(f.child(), d);
    case K::And: return eval_flat(f.left(), d) && eval_flat(f.right(), d);
    case K::Or: return eval_flat(f.left(), d) || eval_flat(f.right(), d);
    case K::Implies: return !eval_flat(f.left(), d) || eval_flat(f.right(), d);
    case K::Iff: return eval_flat(f.left(), d) == eval_flat(f.right(), d);
    case K::Diamond: return (d.theta_d >> (f.child().index() - 1)) & 1U;
    case K::Box: break;
  }
  throw Error("formula is not flat");
}

inline VarIndex max_variable_of(const std::vector<InferenceRule>& rules) {
  VarIndex m = 0;
  for (const auto& r : rules) {
    for (const auto& p : r.premises) m = std::max(m, max_variable(p));
    m = std::max(m, max_variable(r.conclusion));
  }
  return m;
}

}  // namespace detail

struct RnfTransform {
  std::vector<RnfRule> rules;
  /// Fresh variables with the subformulas they stand for. A substitution σ on the
  /// input extends to the output by σ(x) := σ(subformula).
  std::vector<std::pair<VarIndex, Formula>> names;
};

/// Rules in reduced normal form that share one variable space and one set of
/// naming definitions, so a single substitution acts on all of them.
inline RnfTransform to_rnf_transform(const std::vector<InferenceRule>& rules,
                                     unsigned max_vars = kMaxVariables) {
  const VarIndex base = detail::max_variable_of(rules);
  detail::Renamer renamer(base + 1);
  std::vector<std::vector<Formula>> premises;
  std::vector<Formula> conclusions;
  for (const auto& r : rules) {
    std::vector<Formula> ps;
    for (const auto& p : r.premises) ps.push_back(renamer.flatten(p));
    premises.push_back(std::move(ps));
    conclusions.push_back(renamer.flatten(r.conclusion));
  }
  const unsigned n = std::max<unsigned>(1, renamer.next_fresh() - 1);
  if (n > max_vars)
    throw ResourceLimit("reduced normal form needs " + std::to_string(n) +
                        " variables; the cap is " + std::to_string(max_vars));
  check_arity(n);
  const auto space = consistent_disjuncts(n);

  std::vector<RnfRule> out;
  for (std::size_t k = 0; k < rules.size(); ++k) {
    std::vector<Formula> parts = premises[k];
    parts.insert(parts.end(), renamer.definitions().begin(), renamer.definitions().end());
    const Formula flat_premise = conj_all(parts);
    RnfRule r;
    r.n = n;
    for (const auto& d : space)
      if (detail::eval_flat(flat_premise, d)) r.premise.push_back(d.id());
    const Formula& c = conclusions[k];
    if (c.is_var()) {
      r.conclusion_var = c.index();
    } else {
      for (DisjunctId id : r.premise)
        if (detail::eval_flat(c, Disjunct::from_id(n, id))) r.conclusion.push_back(id);
    }
    r.normalize_in_place();
    out.push_back(std::move(r));
  }
  return {std::move(out), renamer.named()};
}

inline std::vector<RnfRule> to_rnf_joint(const std::vector<InferenceRule>& rules,
                                         unsigned max_vars = kMaxVariables) {
  return to_rnf_transform(rules, max_vars).rules;
}

inline RnfRule to_rnf(const InferenceRule& rule, unsigned max_vars = kMaxVariables) {
  return to_rnf_joint({rule}, max_vars).front();
}

inline RnfRule to_rnf(const std::vector<Formula>& premises, const Formula& conclusion,
                      unsigned max_vars = kMaxVariables) {
  return to_rnf(InferenceRule{premises, conclusion}, max_vars);
}

}  // namespace s4adm
