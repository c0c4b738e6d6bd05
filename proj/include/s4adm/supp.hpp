#pragma once

// Membership in Supp1 / Supp2 and the witness search behind every verdict.
//
// Supp1 membership is the self-satisfaction of M(Θn, W), computed on bitmasks:
// W is in Supp1 iff all its disjuncts are consistent and, for every theta_d value
// c occurring in W, the theta of the worlds below c covers c. Supp2 adds the
// closure condition over the union family of theta_d values.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/model.hpp"
#include "s4adm/rnf.hpp"

namespace s4adm {

inline constexpr std::uint64_t kDefaultSubsetCap = std::uint64_t{1} << 22;

enum class Family { Supp1, Supp2 };

namespace detail {

inline bool supp1_masks(const std::vector<Disjunct>& w) {
  if (w.empty()) return false;
  for (const auto& d : w)
    if (!d.consistent()) return false;
  for (const auto& d : w) {
    std::uint32_t seen = 0;
    for (const auto& y : w)
      if (sub_mask(y.theta_d, d.theta_d)) seen |= y.theta;
    if (seen != d.theta_d) return false;
  }
  return true;
}

inline bool closure_masks(const std::vector<Disjunct>& w) {
  for (std::uint32_t u : union_family(w)) {
    bool found = false;
    for (const auto& z : w)
      if (z.theta_d == (z.theta | u)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool member_masks(Family f, const std::vector<Disjunct>& w) {
  if (!supp1_masks(w)) return false;
  return f == Family::Supp1 || closure_masks(w);
}

}  // namespace detail

inline bool in_supp1(unsigned n, const IdSet& w) {
  return detail::supp1_masks(detail::disjuncts_of(n, w));
}

inline bool in_supp2(unsigned n, const IdSet& w) {
  return detail::member_masks(Family::Supp2, detail::disjuncts_of(n, w));
}

inline bool in_family(Family f, unsigned n, const IdSet& w) {
  return f == Family::Supp1 ? in_supp1(n, w) : in_supp2(n, w);
}

/// Some x in W with theta(x) = theta_d(x).
inline bool has_reflexive_point(unsigned n, const IdSet& w) {
  for (const auto& d : detail::disjuncts_of(n, w))
    if (d.reflexive()) return true;
  return false;
}

/// For all x, y in W some z in W sees both and theta_d(z) ⊆ theta(z) ∪ theta_d(x) ∪ theta_d(y).
inline bool pairwise_cover(unsigned n, const IdSet& w) {
  const auto ds = detail::disjuncts_of(n, w);
  for (const auto& x : ds)
    for (const auto& y : ds) {
      bool found = false;
      for (const auto& z : ds) {
        if (!detail::sub_mask(x.theta_d, z.theta_d) || !detail::sub_mask(y.theta_d, z.theta_d)) continue;
        if (detail::sub_mask(z.theta_d, z.theta | x.theta_d | y.theta_d)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Witness search

/// Find W in the family with W ⊆ universe, required ⊆ W, and W meeting each set in `meets`.
struct WitnessQuery {
  unsigned n = 1;
  IdSet universe;
  IdSet required;
  std::vector<IdSet> meets;
};

struct Witness {
  IdSet set;
  /// False when the size-ordered enumeration ran past the subset cap and the
  /// returned set is a valid witness that may not be the smallest.
  bool minimal = true;
};

namespace detail {

/// Largest Supp1 subset of `pool`: drop every theta_d class whose lower part
/// fails to cover it, until nothing changes. Supp1 is closed under union, so
/// every Supp1 subset of the pool survives.
inline std::vector<Disjunct> greatest_supp1(std::vector<Disjunct> pool) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Disjunct> kept;
    for (const auto& d : pool) {
      std::uint32_t seen = 0;
      for (const auto& y : pool)
        if (sub_mask(y.theta_d, d.theta_d)) seen |= y.theta;
      if (seen == d.theta_d) kept.push_back(d);
      else changed = true;
    }
    pool = std::move(kept);
  }
  return pool;
}

inline IdSet ids_of(const std::vector<Disjunct>& ds) {
  IdSet out;
  for (const auto& d : ds) out.push_back(d.id());
  return normalize(out);
}

inline bool meets_all(const IdSet& w, const std::vector<IdSet>& meets) {
  for (const auto& m : meets)
    if (!intersects(w, m)) return false;
  return true;
}

class WitnessSearch {
 public:
  WitnessSearch(Family family, WitnessQuery q, std::uint64_t cap)
      : family_(family), q_(std::move(q)), cap_(cap) {
    check_arity(q_.n);
    q_.universe = normalize(q_.universe);
    q_.required = normalize(q_.required);
    for (auto& m : q_.meets) m = normalize(m);
    std::vector<Disjunct> pool;
    for (DisjunctId id : q_.universe) {
      const auto d = Disjunct::from_id(q_.n, id);
      if (d.consistent()) pool.push_back(d);
    }
    top_ = greatest_supp1(std::move(pool));
  }

  /// Any witness, or nothing. Exact: a witness exists iff one made of whole
  /// theta_d classes of the Supp1 core exists, and membership of such unions is
  /// monotone in the classes chosen.
  std::optional<IdSet> any() const {
    const IdSet top = ids_of(top_);
    if (top.empty() || !subset_of(q_.required, top) || !meets_all(top, q_.meets)) return std::nullopt;
    if (family_ == Family::Supp1) return top;

    std::vector<std::uint32_t> values;
    for (const auto& d : top_) values.push_back(d.theta_d);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<std::uint32_t> forced;
    for (DisjunctId id : q_.required) forced.push_back(Disjunct::from_id(q_.n, id).theta_d);
    std::vector<std::uint32_t> free;
    for (std::uint32_t v : values)
      if (std::find(forced.begin(), forced.end(), v) == forced.end()) free.push_back(v);
    if (free.size() >= 63 || (std::uint64_t{1} << free.size()) > cap_)
      throw ResourceLimit("witness search over " + std::to_string(free.size()) +
                          " world classes exceeds the subset cap");

    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      std::vector<Disjunct> w;
      for (const auto& d : top_) {
        bool take = std::find(forced.begin(), forced.end(), d.theta_d) != forced.end();
        for (std::size_t k = 0; k < free.size() && !take; ++k)
          take = ((mask >> k) & 1U) && free[k] == d.theta_d;
        if (take) w.push_back(d);
      }
      if (w.empty()) continue;
      const IdSet ids = ids_of(w);
      if (meets_all(ids, q_.meets) && member_masks(family_, w)) return ids;
    }
    return std::nullopt;
  }

  /// The witness that is smallest by size, then lexicographically.
  std::optional<Witness> smallest() const {
    const auto fallback = any();
    if (!fallback) return std::nullopt;
    std::vector<Disjunct> extra;
    for (const auto& d : top_)
      if (!std::binary_search(q_.required.begin(), q_.required.end(), d.id())) extra.push_back(d);
    std::vector<Disjunct> base;
    for (DisjunctId id : q_.required) base.push_back(Disjunct::from_id(q_.n, id));

    std::uint64_t visited = 0;
    std::vector<std::size_t> pick;
    for (std::size_t k = 0; k <= extra.size(); ++k) {
      pick.resize(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        if (++visited > cap_) return Witness{*fallback, false};
        std::vector<Disjunct> w = base;
        for (std::size_t i : pick) w.push_back(extra[i]);
        if (!w.empty()) {
          const IdSet ids = ids_of(w);
          if (meets_all(ids, q_.meets) && member_masks(family_, w)) return Witness{ids, true};
        }
        if (!next_combination(pick, extra.size())) break;
      }
    }
    return Witness{*fallback, false};
  }

 private:
  static bool next_combination(std::vector<std::size_t>& pick, std::size_t total) {
    const std::size_t k = pick.size();
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (pick[i] < total - k + i) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  Family family_;
  WitnessQuery q_;
  std::uint64_t cap_;
  std::vector<Disjunct> top_;
};

}  // namespace detail

inline std::optional<IdSet> find_any_witness(Family f, const WitnessQuery& q,
                                             std::uint64_t cap = kDefaultSubsetCap) {
  return detail::WitnessSearch(f, q, cap).any();
}

inline std::optional<Witness> find_smallest_witness(Family f, const WitnessQuery& q,
                                                    std::uint64_t cap = kDefaultSubsetCap) {
  return detail::WitnessSearch(f, q, cap).smallest();
}

/// lower ⊊ W ⊆ upper.
struct SuppConstraint {
  IdSet upper;
  IdSet lower;
};

inline WitnessQuery strict_query(unsigned n, const std::vector<SuppConstraint>& cs) {
  check_arity(n);
  WitnessQuery q{n, consistent_ids(n), {}, {}};
  for (const auto& c : cs) {
    const IdSet upper = normalize(c.upper);
    const IdSet lower = normalize(c.lower);
    if (!subset_of(lower, upper)) throw InputError("constraint lower set is not inside its upper set");
    for (DisjunctId id : upper) (void)Disjunct::from_id(n, id);
    q.universe = set_intersection(q.universe, upper);
    q.required = set_union(q.required, lower);
  }
  for (const auto& c : cs) q.meets.push_back(set_difference(normalize(c.upper), normalize(c.lower)));
  return q;
}

inline std::optional<Witness> find_supp2_witness(unsigned n, const std::vector<SuppConstraint>& cs,
                                                 std::uint64_t cap = kDefaultSubsetCap) {
  return find_smallest_witness(Family::Supp2, strict_query(n, cs), cap);
}

}  // namespace s4adm
