#pragma once

// The models M(Θn, W): worlds are disjuncts, x sees y iff theta_d(y) ⊆ theta_d(x),
// and p_i holds at x iff p_i ∈ theta(x).

#include <cstdint>
#include <set>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/kripke.hpp"
#include "s4adm/rnf.hpp"

namespace s4adm {

namespace detail {

inline std::vector<Disjunct> disjuncts_of(unsigned n, const IdSet& w) {
  check_arity(n);
  if (w.empty()) throw InputError("world set is empty");
  std::vector<Disjunct> out;
  for (DisjunctId id : normalize(w)) out.push_back(Disjunct::from_id(n, id));
  return out;
}

inline bool sub_mask(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

/// {∅} ∪ every union of theta_d values over nonempty subsets of w, as a sorted list.
inline std::vector<std::uint32_t> union_family(const std::vector<Disjunct>& w) {
  std::set<std::uint32_t> family{0};
  for (const auto& d : w) {
    std::vector<std::uint32_t> grown;
    for (std::uint32_t u : family) grown.push_back(u | d.theta_d);
    family.insert(grown.begin(), grown.end());
  }
  return {family.begin(), family.end()};
}

}  // namespace detail

inline KripkeModel build_model(unsigned n, const IdSet& w) {
  const auto ds = detail::disjuncts_of(n, w);
  KripkeModel m;
  for (const auto& d : ds) m.add_world(d.id());
  for (std::size_t a = 0; a < ds.size(); ++a)
    for (std::size_t b = 0; b < ds.size(); ++b)
      if (detail::sub_mask(ds[b].theta_d, ds[a].theta_d)) m.add_edge(a, b);
  for (VarIndex v = 1; v <= n; ++v) {
    m.declare(v);
    for (std::size_t a = 0; a < ds.size(); ++a)
      if ((ds[a].theta >> (v - 1)) & 1U) m.set_true(v, a);
  }
  m.set_s4(true);
  return m;
}

/// Every world satisfies its own disjunct. Evaluated in the built model.
inline bool self_satisfying(unsigned n, const IdSet& w) {
  const KripkeModel m = build_model(n, w);
  for (std::size_t a = 0; a < m.size(); ++a)
    if (!m.eval(a, disjunct_formula(Disjunct::from_id(n, m.label(a))))) return false;
  return true;
}

/// Unions u (as variable masks) for which no z in W has theta_d(z) = theta(z) ∪ u.
inline std::vector<std::uint32_t> closure_failures(unsigned n, const IdSet& w) {
  const auto ds = detail::disjuncts_of(n, w);
  std::vector<std::uint32_t> out;
  for (std::uint32_t u : detail::union_family(ds)) {
    bool found = false;
    for (const auto& z : ds)
      if (z.theta_d == (z.theta | u)) {
        found = true;
        break;
      }
    if (!found) out.push_back(u);
  }
  return out;
}

inline bool closure_condition(unsigned n, const IdSet& w) { return closure_failures(n, w).empty(); }

}  // namespace s4adm
