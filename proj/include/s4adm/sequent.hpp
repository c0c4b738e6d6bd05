#pragma once

// Checker for explicit G1s derivations. Contexts are multisets; the modal rules
// are
//   □L  A, □A, Γ ⊢ Δ / □A, Γ ⊢ Δ
//   □R  □Γ ⊢ A, ◇Δ / □Γ, Γ′ ⊢ □A, ◇Δ, Δ′
//   ◇L  A, □Γ ⊢ ◇Δ / ◇A, □Γ, Γ′ ⊢ ◇Δ, Δ′
//   ◇R  Γ ⊢ A, ◇A, Δ / Γ ⊢ ◇A, Δ
// and the propositional rules share their context between premises.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"

namespace s4adm {

using Multiset = std::vector<Formula>;

struct Sequent {
  Multiset ant;
  Multiset suc;
};

enum class Rule {
  Ax, BotL, AndL, AndR, OrL, OrR, ImpL, ImpR, NegL, NegR, LW, RW, Cut, BoxL, BoxR, DiaL, DiaR
};

inline std::string_view rule_name(Rule r) {
  static constexpr std::string_view names[] = {"Ax", "BotL", "AndL", "AndR", "OrL", "OrR",
                                               "ImpL", "ImpR", "NegL", "NegR", "LW", "RW",
                                               "Cut", "BoxL", "BoxR", "DiaL", "DiaR"};
  return names[static_cast<int>(r)];
}

/// Accepts the ASCII names above and their symbolic spellings (⊥L, ∧R, →R, □L, ◇R, ...).
inline Rule parse_rule_name(std::string_view name) {
  static const std::pair<std::string_view, Rule> table[] = {
      {"Ax", Rule::Ax},     {"BotL", Rule::BotL}, {"⊥L", Rule::BotL},  {"AndL", Rule::AndL},
      {"∧L", Rule::AndL},   {"AndR", Rule::AndR}, {"∧R", Rule::AndR},  {"OrL", Rule::OrL},
      {"∨L", Rule::OrL},    {"OrR", Rule::OrR},   {"∨R", Rule::OrR},   {"ImpL", Rule::ImpL},
      {"→L", Rule::ImpL},   {"ImpR", Rule::ImpR}, {"→R", Rule::ImpR},  {"NegL", Rule::NegL},
      {"¬L", Rule::NegL},   {"NegR", Rule::NegR}, {"¬R", Rule::NegR},  {"LW", Rule::LW},
      {"RW", Rule::RW},     {"Cut", Rule::Cut},   {"BoxL", Rule::BoxL}, {"□L", Rule::BoxL},
      {"BoxR", Rule::BoxR}, {"□R", Rule::BoxR},   {"DiaL", Rule::DiaL}, {"◇L", Rule::DiaL},
      {"DiaR", Rule::DiaR}, {"◇R", Rule::DiaR},
  };
  for (const auto& [spelling, rule] : table)
    if (spelling == name) return rule;
  throw InputError("unknown rule name '" + std::string(name) + "'");
}

struct Derivation {
  Rule rule = Rule::Ax;
  Sequent conclusion;
  std::vector<Derivation> premises;
  /// Optional: the formula the rule acts on (in the conclusion; the cut formula for Cut).
  std::optional<Formula> principal;
};

struct CheckResult {
  bool ok = true;
  /// Location of the first failing node, e.g. "root.0.1".
  std::string node;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

inline std::string print(const Sequent& s, Notation style = Notation::Ascii) {
  std::string out;
  auto side = [&](const Multiset& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out += ", ";
      out += print(m[i], style);
    }
  };
  side(s.ant);
  out += s.ant.empty() ? "|-" : " |-";
  if (!s.suc.empty()) out += ' ';
  side(s.suc);
  return out;
}

namespace detail {

inline Multiset sorted(Multiset m) {
  std::sort(m.begin(), m.end());
  return m;
}

inline bool same_multiset(const Multiset& a, const Multiset& b) {
  return a.size() == b.size() && sorted(a) == sorted(b);
}

/// `m` with one copy of `f` removed, or nullopt when absent.
inline std::optional<Multiset> remove_one(const Multiset& m, const Formula& f) {
  auto it = std::find(m.begin(), m.end(), f);
  if (it == m.end()) return std::nullopt;
  Multiset out = m;
  out.erase(out.begin() + (it - m.begin()));
  return out;
}

inline Multiset plus(Multiset m, std::initializer_list<Formula> extra) {
  m.insert(m.end(), extra.begin(), extra.end());
  return m;
}

/// Sub-multiset test.
inline bool contained(const Multiset& small, const Multiset& big) {
  Multiset a = sorted(small), b = sorted(big);
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class Checker {
 public:
  CheckResult run(const Derivation& d) {
    check(d, "root");
    return result_;
  }

 private:
  void fail(const std::string& where, std::string why) {
    if (!result_.ok) return;
    result_.ok = false;
    result_.node = where;
    result_.reason = std::move(why);
  }

  void check(const Derivation& d, const std::string& where) {
    if (!result_.ok) return;
    if (auto err = check_node(d); !err.empty()) {
      fail(where, std::string(rule_name(d.rule)) + ": " + err);
      return;
    }
    for (std::size_t i = 0; i < d.premises.size(); ++i)
      check(d.premises[i], where + "." + std::to_string(i));
  }

  static std::size_t arity(Rule r) {
    switch (r) {
      case Rule::Ax:
      case Rule::BotL: return 0;
      case Rule::AndR:
      case Rule::OrL:
      case Rule::ImpL:
      case Rule::Cut: return 2;
      default: return 1;
    }
  }

  /// Tries every admissible principal formula; empty string on success.
  static std::string check_node(const Derivation& d) {
    const Sequent& c = d.conclusion;
    if (d.premises.size() != arity(d.rule))
      return "expected " + std::to_string(arity(d.rule)) + " premise(s), found " +
             std::to_string(d.premises.size());
    switch (d.rule) {
      case Rule::Ax:
        if (c.ant.size() == 1 && c.suc.size() == 1 && c.ant[0] == c.suc[0]) return {};
        return "conclusion is not of the form A |- A";
      case Rule::BotL:
        if (c.ant.size() == 1 && c.suc.empty() && c.ant[0].kind() == Formula::Kind::Bottom)
          return {};
        return "conclusion is not _|_ |-";
      case Rule::Cut: return check_cut(d);
      default: break;
    }
    const bool left = d.rule == Rule::AndL || d.rule == Rule::OrL || d.rule == Rule::ImpL ||
                      d.rule == Rule::NegL || d.rule == Rule::LW || d.rule == Rule::BoxL ||
                      d.rule == Rule::DiaL;
    const Multiset& side = left ? c.ant : c.suc;
    std::string last = "no formula in the conclusion fits the rule";
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (i > 0 && side[i] == side[i - 1]) continue;
      if (d.principal && !(side[i] == *d.principal)) continue;
      std::string err = try_principal(d, side[i]);
      if (err.empty()) return {};
      last = std::move(err);
    }
    if (d.principal) return "principal " + print(*d.principal) + ": " + last;
    return last;
  }

  static std::string check_cut(const Derivation& d) {
    const Sequent& c = d.conclusion;
    const Sequent& p0 = d.premises[0].conclusion;
    const Sequent& p1 = d.premises[1].conclusion;
    // The cut formula is the extra right formula of the first premise.
    for (const Formula& a : p0.suc) {
      if (d.principal && !(a == *d.principal)) continue;
      if (same_multiset(p0.suc, plus(c.suc, {a})) && same_multiset(p0.ant, c.ant) &&
          same_multiset(p1.ant, plus(c.ant, {a})) && same_multiset(p1.suc, c.suc))
        return {};
    }
    return "premises are not G |- A, D and A, G |- D for the conclusion G |- D";
  }

  static bool all_of_kind(const Multiset& m, Formula::Kind k) {
    return std::all_of(m.begin(), m.end(), [k](const Formula& f) { return f.kind() == k; });
  }

  static std::string try_principal(const Derivation& d, const Formula& pf) {
    using FK = Formula::Kind;
    const Sequent& c = d.conclusion;
    auto premise = [&](std::size_t i) -> const Sequent& { return d.premises[i].conclusion; };
    auto expect = [&](std::size_t i, const Multiset& ant, const Multiset& suc) -> std::string {
      if (same_multiset(premise(i).ant, ant) && same_multiset(premise(i).suc, suc)) return {};
      return "premise " + std::to_string(i) + " should be " + print(Sequent{ant, suc});
    };
    auto need = [&](FK k, const char* what) -> std::string {
      return pf.kind() == k ? std::string{} : std::string("principal formula is not ") + what;
    };
    const bool left = d.rule == Rule::AndL || d.rule == Rule::OrL || d.rule == Rule::ImpL ||
                      d.rule == Rule::NegL || d.rule == Rule::LW || d.rule == Rule::BoxL ||
                      d.rule == Rule::DiaL;
    const Multiset gamma = left ? *remove_one(c.ant, pf) : c.ant;
    const Multiset delta = left ? c.suc : *remove_one(c.suc, pf);

    switch (d.rule) {
      case Rule::AndL:
        if (auto e = need(FK::And, "a conjunction"); !e.empty()) return e;
        return expect(0, plus(gamma, {pf.left(), pf.right()}), delta);
      case Rule::AndR:
        if (auto e = need(FK::And, "a conjunction"); !e.empty()) return e;
        if (auto e = expect(0, gamma, plus(delta, {pf.left()})); !e.empty()) return e;
        return expect(1, gamma, plus(delta, {pf.right()}));
      case Rule::OrL:
        if (auto e = need(FK::Or, "a disjunction"); !e.empty()) return e;
        if (auto e = expect(0, plus(gamma, {pf.left()}), delta); !e.empty()) return e;
        return expect(1, plus(gamma, {pf.right()}), delta);
      case Rule::OrR:
        if (auto e = need(FK::Or, "a disjunction"); !e.empty()) return e;
        return expect(0, gamma, plus(delta, {pf.left(), pf.right()}));
      case Rule::ImpL:
        if (auto e = need(FK::Implies, "an implication"); !e.empty()) return e;
        if (auto e = expect(0, gamma, plus(delta, {pf.left()})); !e.empty()) return e;
        return expect(1, plus(gamma, {pf.right()}), delta);
      case Rule::ImpR:
        if (auto e = need(FK::Implies, "an implication"); !e.empty()) return e;
        return expect(0, plus(gamma, {pf.left()}), plus(delta, {pf.right()}));
      case Rule::NegL:
        if (auto e = need(FK::Not, "a negation"); !e.empty()) return e;
        return expect(0, gamma, plus(delta, {pf.child()}));
      case Rule::NegR:
        if (auto e = need(FK::Not, "a negation"); !e.empty()) return e;
        return expect(0, plus(gamma, {pf.child()}), delta);
      case Rule::LW:
      case Rule::RW: return expect(0, gamma, delta);
      case Rule::BoxL:
        if (auto e = need(FK::Box, "a box"); !e.empty()) return e;
        return expect(0, plus(c.ant, {pf.child()}), delta);
      case Rule::DiaR:
        if (auto e = need(FK::Diamond, "a diamond"); !e.empty()) return e;
        return expect(0, gamma, plus(c.suc, {pf.child()}));
      case Rule::BoxR: {
        if (auto e = need(FK::Box, "a box"); !e.empty()) return e;
        const Sequent& p = premise(0);
        if (!all_of_kind(p.ant, FK::Box)) return "premise antecedent is not all boxed";
        auto rest = remove_one(p.suc, pf.child());
        if (!rest) return "premise succedent lacks " + print(pf.child());
        if (!all_of_kind(*rest, FK::Diamond)) return "premise side formulas are not all diamonds";
        if (!contained(p.ant, gamma)) return "boxed context missing from the conclusion";
        if (!contained(*rest, delta)) return "diamond context missing from the conclusion";
        return {};
      }
      case Rule::DiaL: {
        if (auto e = need(FK::Diamond, "a diamond"); !e.empty()) return e;
        const Sequent& p = premise(0);
        auto rest = remove_one(p.ant, pf.child());
        if (!rest) return "premise antecedent lacks " + print(pf.child());
        if (!all_of_kind(*rest, FK::Box)) return "premise side formulas are not all boxed";
        if (!all_of_kind(p.suc, FK::Diamond)) return "premise succedent is not all diamonds";
        if (!contained(*rest, gamma)) return "boxed context missing from the conclusion";
        if (!contained(p.suc, delta)) return "diamond context missing from the conclusion";
        return {};
      }
      default: return "unsupported rule";
    }
  }

  CheckResult result_;
};

}  // namespace detail

/// Checks every node of `d` against its named schema; reports the first failure
/// in pre-order.
inline CheckResult check_derivation(const Derivation& d) { return detail::Checker().run(d); }

/// Number of nodes in the derivation tree.
inline std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += derivation_size(p);
  return n;
}

}  // namespace s4adm
