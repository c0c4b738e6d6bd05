#pragma once

// Test-side helpers: random formulas and a brute-force S4 oracle that shares no
// code with the tableau.

#include <cstdint>
#include <random>
#include <vector>

#include "s4adm/formula.hpp"
#include "s4adm/kripke.hpp"

namespace s4adm::test {

inline Formula random_formula(std::mt19937& rng, VarIndex vars, int depth) {
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  if (depth <= 0 || pick(5) == 0) {
    if (pick(8) == 0) return bottom();
    return var(static_cast<VarIndex>(1 + pick(static_cast<int>(vars))));
  }
  switch (pick(8)) {
    case 0: return neg(random_formula(rng, vars, depth - 1));
    case 1: return box(random_formula(rng, vars, depth - 1));
    case 2: return dia(random_formula(rng, vars, depth - 1));
    case 3: return conj(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 4: return disj(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 5: return imp(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    case 6: return iff(random_formula(rng, vars, depth - 1), random_formula(rng, vars, depth - 1));
    default: return neg(random_formula(rng, vars, depth - 1));
  }
}

/// Every reflexive transitive relation on `k` points, as adjacency bitmasks.
inline std::vector<std::vector<std::uint32_t>> preorders(unsigned k) {
  std::vector<std::vector<std::uint32_t>> out;
  const unsigned pairs = k * k;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs); ++bits) {
    std::vector<std::uint32_t> r(k, 0);
    for (unsigned a = 0; a < k; ++a)
      for (unsigned b = 0; b < k; ++b)
        if ((bits >> (a * k + b)) & 1U) r[a] |= 1U << b;
    bool ok = true;
    for (unsigned a = 0; a < k && ok; ++a) {
      if (!((r[a] >> a) & 1U)) ok = false;
      for (unsigned b = 0; b < k && ok; ++b)
        if ((r[a] >> b) & 1U && (r[b] & ~r[a])) ok = false;
    }
    if (ok) out.push_back(r);
  }
  return out;
}

/// Truth set of `f` (bit w = true at world w) in a model given by masks.
inline std::uint32_t truth_set(const std::vector<std::uint32_t>& r,
                               const std::vector<std::uint32_t>& val, const Formula& f) {
  const unsigned k = static_cast<unsigned>(r.size());
  const std::uint32_t all = (k == 32) ? ~0U : ((1U << k) - 1);
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var: return val.at(f.index() - 1);
    case K::Bottom: return 0;
    case K::Not: return all & ~truth_set(r, val, f.child());
    case K::And: return truth_set(r, val, f.left()) & truth_set(r, val, f.right());
    case K::Or: return truth_set(r, val, f.left()) | truth_set(r, val, f.right());
    case K::Implies: return (all & ~truth_set(r, val, f.left())) | truth_set(r, val, f.right());
    case K::Iff:
      return all & ~(truth_set(r, val, f.left()) ^ truth_set(r, val, f.right()));
    case K::Box:
    case K::Diamond: {
      const std::uint32_t inner = truth_set(r, val, f.child());
      std::uint32_t out = 0;
      for (unsigned w = 0; w < k; ++w) {
        const bool hit = f.kind() == K::Box ? (r[w] & ~inner) == 0 : (r[w] & inner) != 0;
        if (hit) out |= 1U << w;
      }
      return out;
    }
  }
  return 0;
}

/// True iff `f` holds everywhere in every S4 model with at most `max_worlds` worlds
/// over variables 1..vars.
inline bool valid_in_small_models(const Formula& f, VarIndex vars, unsigned max_worlds) {
  for (unsigned k = 1; k <= max_worlds; ++k) {
    const std::uint32_t all = (1U << k) - 1;
    for (const auto& r : preorders(k)) {
      const std::uint64_t combos = std::uint64_t{1} << (k * vars);
      for (std::uint64_t c = 0; c < combos; ++c) {
        std::vector<std::uint32_t> val(vars);
        for (VarIndex v = 0; v < vars; ++v) val[v] = static_cast<std::uint32_t>((c >> (v * k)) & all);
        if (truth_set(r, val, f) != all) return false;
      }
    }
  }
  return true;
}

}  // namespace s4adm::test
