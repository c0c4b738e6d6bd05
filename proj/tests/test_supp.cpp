#include <gtest/gtest.h>

#include <random>

#include "s4adm/model.hpp"
#include "s4adm/supp.hpp"
#include "worlds.hpp"

using namespace s4adm;

namespace {

constexpr DisjunctId d0 = 0;
constexpr DisjunctId dD = 2;
constexpr DisjunctId dT = 3;

std::vector<IdSet> all_nonempty_subsets(const IdSet& ids) {
  std::vector<IdSet> out;
  for (std::uint32_t mask = 1; mask < (1U << ids.size()); ++mask) {
    IdSet w;
    for (std::size_t k = 0; k < ids.size(); ++k)
      if ((mask >> k) & 1U) w.push_back(ids[k]);
    out.push_back(w);
  }
  return out;
}

/// Smallest member of the family satisfying the query, by brute force over
/// all subsets of the consistent disjuncts ordered by size then lexicographically.
std::optional<IdSet> brute_smallest(Family f, const WitnessQuery& q) {
  std::vector<IdSet> candidates = all_nonempty_subsets(consistent_ids(q.n));
  std::sort(candidates.begin(), candidates.end(), [](const IdSet& a, const IdSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& w : candidates) {
    if (!subset_of(w, normalize(q.universe)) || !subset_of(normalize(q.required), w)) continue;
    bool ok = true;
    for (const auto& m : q.meets) ok = ok && intersects(w, normalize(m));
    if (ok && in_family(f, q.n, w)) return w;
  }
  return std::nullopt;
}

}  // namespace

TEST(Supp, MembershipExamples) {
  EXPECT_TRUE(in_supp1(1, {dD, dT}));
  EXPECT_FALSE(in_supp1(1, {dD}));
  EXPECT_TRUE(in_supp2(1, {dD, dT}));
  EXPECT_TRUE(in_supp2(1, {dT}));
  EXPECT_TRUE(in_supp1(1, {d0, dT}));
}

TEST(Supp, BitmaskAgreesWithModelEvaluation) {
  for (unsigned n = 1; n <= 2; ++n) {
    IdSet every;
    for (DisjunctId id = 0; id < (1U << (2 * n)); ++id) every.push_back(id);
    if (n == 1) {
      for (const auto& w : all_nonempty_subsets(every)) EXPECT_EQ(in_supp1(n, w), self_satisfying(n, w));
    }
    for (const auto& w : all_nonempty_subsets(consistent_ids(n))) {
      EXPECT_EQ(in_supp1(n, w), self_satisfying(n, w));
      EXPECT_EQ(in_supp2(n, w), self_satisfying(n, w) && closure_condition(n, w));
    }
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    IdSet w = test::random_subset(rng, consistent_ids(3));
    if (w.empty()) continue;
    EXPECT_EQ(in_supp1(3, w), self_satisfying(3, w));
  }
}

TEST(Supp, FourVariableSeparation) {
  const IdSet w = test::closure_counterexample();
  EXPECT_TRUE(in_supp1(4, w));
  EXPECT_TRUE(has_reflexive_point(4, w));
  EXPECT_TRUE(pairwise_cover(4, w));
  EXPECT_FALSE(closure_condition(4, w));
  EXPECT_FALSE(in_supp2(4, w));
}

// For three or fewer variables the two weaker conditions are enough.
TEST(Supp, WeakConditionsSufficeForTwoVariables) {
  for (const auto& w : all_nonempty_subsets(consistent_ids(2))) {
    if (!in_supp1(2, w)) continue;
    EXPECT_EQ(in_supp2(2, w), has_reflexive_point(2, w) && pairwise_cover(2, w));
  }
}

TEST(Supp, Supp2InsideSupp1) {
  for (unsigned n = 1; n <= 2; ++n)
    for (const auto& w : all_nonempty_subsets(consistent_ids(n)))
      if (in_supp2(n, w)) {
        EXPECT_TRUE(in_supp1(n, w));
      }
}

TEST(Supp, GeneratedSetsAreInSupp1) {
  std::mt19937 rng(17);
  for (unsigned n = 1; n <= 4; ++n)
    for (int i = 0; i < 100; ++i) {
      const IdSet w = test::random_supp1(rng, n);
      EXPECT_TRUE(in_supp1(n, w)) << n;
    }
}

TEST(Supp, UnionClosure) {
  std::mt19937 rng(23);
  for (unsigned n = 2; n <= 3; ++n)
    for (int i = 0; i < 100; ++i) {
      const IdSet a = test::random_supp1(rng, n);
      const IdSet b = test::random_supp1(rng, n);
      EXPECT_TRUE(in_supp1(n, set_union(a, b)));
    }
}

// The part of W seen from a reflexive point is in Supp2.
TEST(Supp, ConeOfReflexivePoint) {
  std::mt19937 rng(29);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const unsigned n = 2 + i % 2;
    const IdSet w = test::random_supp1(rng, n);
    for (DisjunctId xid : w) {
      const auto x = Disjunct::from_id(n, xid);
      if (!x.reflexive()) continue;
      IdSet cone;
      for (DisjunctId yid : w) {
        if ((Disjunct::from_id(n, yid).theta_d & ~x.theta_d) == 0) cone.push_back(yid);
      }
      EXPECT_TRUE(in_supp2(n, cone));
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Supp, WitnessExamples) {
  const auto w = find_supp2_witness(1, {{{dD, dT}, {dD}}});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->set, (IdSet{dD, dT}));
  EXPECT_TRUE(w->minimal);
  EXPECT_FALSE(find_supp2_witness(1, {{{dD, dT}, {dD, dT}}}));
  EXPECT_FALSE(find_supp2_witness(1, {{{dD}, {}}}));
  EXPECT_THROW(find_supp2_witness(1, {{{dD}, {dT}}}), InputError);
}

TEST(Supp, SmallestWitnessMatchesBruteForce) {
  std::mt19937 rng(31);
  for (unsigned n = 1; n <= 2; ++n) {
    const IdSet ids = consistent_ids(n);
    for (int i = 0; i < 400; ++i) {
      WitnessQuery q{n, test::random_subset(rng, ids), {}, {}};
      if (rng() % 3 == 0) q.required = test::random_subset(rng, q.universe);
      const int meets = static_cast<int>(rng() % 3);
      for (int k = 0; k < meets; ++k) q.meets.push_back(test::random_subset(rng, ids));
      for (Family f : {Family::Supp1, Family::Supp2}) {
        const auto expect = brute_smallest(f, q);
        const auto got = find_smallest_witness(f, q);
        ASSERT_EQ(expect.has_value(), got.has_value());
        if (got) {
          EXPECT_TRUE(got->minimal);
          EXPECT_EQ(*expect, got->set);
        }
        EXPECT_EQ(expect.has_value(), find_any_witness(f, q).has_value());
      }
    }
  }
}

TEST(Supp, ExistenceMatchesBruteForceOnThreeVariables) {
  std::mt19937 rng(37);
  const IdSet ids = consistent_ids(3);
  for (int i = 0; i < 40; ++i) {
    WitnessQuery q{3, test::random_subset(rng, ids), {}, {test::random_subset(rng, ids)}};
    if (q.universe.size() > 14) continue;
    const auto any = find_any_witness(Family::Supp2, q);
    bool brute = false;
    for (const auto& w : all_nonempty_subsets(q.universe))
      if (intersects(w, q.meets[0]) && in_supp2(3, w)) brute = true;
    EXPECT_EQ(brute, any.has_value());
    if (any) {
      EXPECT_TRUE(in_supp2(3, *any));
    }
  }
}

TEST(Supp, CapFallsBackToValidWitness) {
  // Covering the top class needs all four single-atom worlds plus the empty reflexive point.
  const std::uint32_t top = 15;
  IdSet cluster;
  for (std::uint32_t t : {1U, 2U, 4U, 8U}) cluster.push_back(test::id_of(4, t, top));
  IdSet universe = cluster;
  universe.push_back(test::id_of(4, 0, 0));
  const WitnessQuery q{4, normalize(universe), {}, {cluster}};
  const auto exact = find_smallest_witness(Family::Supp2, q);
  ASSERT_TRUE(exact);
  EXPECT_TRUE(exact->minimal);
  EXPECT_EQ(exact->set.size(), 5u);
  const auto capped = find_smallest_witness(Family::Supp2, q, 10);
  ASSERT_TRUE(capped);
  EXPECT_FALSE(capped->minimal);
  EXPECT_TRUE(in_supp2(4, capped->set));
  EXPECT_THROW(find_any_witness(Family::Supp2, q, 2), ResourceLimit);
}
