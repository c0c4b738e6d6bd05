#pragma once

// Validity and admissibility of rules in reduced normal form.
//
// A rule with premise set P and conclusion set J ⊆ P is refuted by a world set
// W ⊆ P that meets P \ J: invalid iff such a W is in Supp1, inadmissible iff
// such a W is in Supp2. A variable conclusion p_k stands for the part of P
// whose theta contains p_k. Several rules are refuted together by one W that
// works for each of them.

#include <cstdint>
#include <optional>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"
#include "s4adm/prover.hpp"
#include "s4adm/rnf.hpp"
#include "s4adm/supp.hpp"

namespace s4adm {

struct Verdict {
  /// Valid / admissible (for a single rule), or "no common refutation" (joint).
  bool holds = true;
  std::optional<Witness> witness;
};

namespace detail {

inline WitnessQuery refutation_query(const std::vector<RnfRule>& rules) {
  if (rules.empty()) throw InputError("no rules given");
  const unsigned n = rules.front().n;
  WitnessQuery q{n, consistent_ids(n), {}, {}};
  for (RnfRule r : rules) {
    if (r.n != n) throw InputError("rules have different variable counts");
    r.normalize_in_place();
    q.universe = set_intersection(q.universe, r.premise);
    q.meets.push_back(set_difference(r.premise, r.conclusion_set()));
  }
  return q;
}

inline Verdict decide(Family f, const std::vector<RnfRule>& rules, std::uint64_t cap) {
  auto w = find_smallest_witness(f, refutation_query(rules), cap);
  if (!w) return {true, std::nullopt};
  return {false, std::move(w)};
}

}  // namespace detail

inline Verdict check_validity(const RnfRule& r, std::uint64_t cap = kDefaultSubsetCap) {
  return detail::decide(Family::Supp1, {r}, cap);
}

inline Verdict check_admissibility(const RnfRule& r, std::uint64_t cap = kDefaultSubsetCap) {
  return detail::decide(Family::Supp2, {r}, cap);
}

inline bool is_valid_rule(const RnfRule& r, std::uint64_t cap = kDefaultSubsetCap) {
  return check_validity(r, cap).holds;
}

inline bool is_admissible(const RnfRule& r, std::uint64_t cap = kDefaultSubsetCap) {
  return check_admissibility(r, cap).holds;
}

/// holds = false means the rules fail together in one S4 model.
inline Verdict check_joint_validity(const std::vector<RnfRule>& rules,
                                    std::uint64_t cap = kDefaultSubsetCap) {
  return detail::decide(Family::Supp1, rules, cap);
}

/// holds = false means one substitution rejects every rule.
inline Verdict check_joint_admissibility(const std::vector<RnfRule>& rules,
                                         std::uint64_t cap = kDefaultSubsetCap) {
  return detail::decide(Family::Supp2, rules, cap);
}

inline bool joint_invalid(const std::vector<RnfRule>& rules, std::uint64_t cap = kDefaultSubsetCap) {
  return !check_joint_validity(rules, cap).holds;
}

inline bool joint_inadmissible(const std::vector<RnfRule>& rules, std::uint64_t cap = kDefaultSubsetCap) {
  return !check_joint_admissibility(rules, cap).holds;
}

/// σ makes every premise a theorem and the conclusion a non-theorem.
inline bool rejects(const Substitution& sigma, const std::vector<Formula>& premises,
                    const Formula& conclusion, std::size_t node_cap = kDefaultNodeCap) {
  for (const auto& p : premises)
    if (!is_theorem(sigma.apply(p), node_cap)) return false;
  return !is_theorem(sigma.apply(conclusion), node_cap);
}

inline bool rejects(const Substitution& sigma, const InferenceRule& r, std::size_t node_cap = kDefaultNodeCap) {
  return rejects(sigma, r.premises, r.conclusion, node_cap);
}

namespace detail {

inline DisjunctId reflexive_point(unsigned n, std::uint32_t theta_d) {
  return Disjunct{n, theta_d, theta_d}.id();
}

/// Adds x to premise and conclusion, unless x is the only point of W that
/// refutes the rule; then adding it would leave nothing to refute with.
inline RnfRule add_point(RnfRule r, DisjunctId x, const IdSet& w) {
  r.normalize_in_place();
  const IdSet refuting = set_difference(set_intersection(w, r.premise), r.conclusion_set());
  if (refuting == IdSet{x}) return make_rnf_rule(r.n, r.premise, r.conclusion_set());
  return make_rnf_rule(r.n, set_union(r.premise, {x}), set_union(r.conclusion_set(), {x}));
}

}  // namespace detail

/// For an invalid rule, adds a point x with theta(x) = theta_d(x) = theta_d(z),
/// z a refuting point of the validity witness, to both sides. The result is
/// inadmissible. The conclusion is always returned as a set.
inline RnfRule reflexive_extension(const RnfRule& r, std::uint64_t cap = kDefaultSubsetCap) {
  const Verdict v = check_validity(r, cap);
  if (v.holds) throw InputError("rule is valid; the extension needs an invalid rule");
  RnfRule rule = r;
  rule.normalize_in_place();
  const IdSet refuting = set_difference(set_intersection(v.witness->set, rule.premise), rule.conclusion_set());
  // A refuting point that is not reflexive keeps refuting after x joins the conclusion.
  DisjunctId z = refuting.front();
  for (DisjunctId id : refuting)
    if (!Disjunct::from_id(rule.n, id).reflexive()) {
      z = id;
      break;
    }
  const DisjunctId x = detail::reflexive_point(rule.n, Disjunct::from_id(rule.n, z).theta_d);
  return detail::add_point(rule, x, v.witness->set);
}

/// One x for all rules: theta(x) = theta_d(x) = the union of theta_d over the
/// joint validity witness, which sees every world of it.
inline std::vector<RnfRule> reflexive_extension_joint(const std::vector<RnfRule>& rules,
                                                      std::uint64_t cap = kDefaultSubsetCap) {
  const Verdict v = check_joint_validity(rules, cap);
  if (v.holds) throw InputError("rules are jointly valid; the extension needs a joint refutation");
  std::uint32_t top = 0;
  for (DisjunctId id : v.witness->set) top |= Disjunct::from_id(rules.front().n, id).theta_d;
  const DisjunctId x = detail::reflexive_point(rules.front().n, top);
  std::vector<RnfRule> out;
  for (const auto& r : rules) out.push_back(detail::add_point(r, x, v.witness->set));
  return out;
}

}  // namespace s4adm
