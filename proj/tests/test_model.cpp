#include <gtest/gtest.h>

#include <random>

#include "s4adm/io.hpp"
#include "s4adm/model.hpp"
#include "worlds.hpp"

using namespace s4adm;

namespace {

constexpr DisjunctId d0 = 0;  // ~p1 & ~<>p1
constexpr DisjunctId dD = 2;  // ~p1 & <>p1
constexpr DisjunctId dT = 3;  // p1 & <>p1

}  // namespace

TEST(Model, SingleCluster) {
  const KripkeModel m = build_model(1, {dD, dT});
  ASSERT_EQ(m.size(), 2u);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) EXPECT_TRUE(m.relates(a, b));
  EXPECT_FALSE(m.holds(1, 0));
  EXPECT_TRUE(m.holds(1, 1));
}

TEST(Model, InclusionEdge) {
  const KripkeModel m = build_model(1, {dT, d0});
  // worlds in id order: d0, dT
  EXPECT_EQ(m.label(0), d0);
  EXPECT_EQ(m.label(1), dT);
  EXPECT_TRUE(m.relates(1, 0));
  EXPECT_FALSE(m.relates(0, 1));
}

TEST(Model, AlwaysPreorder) {
  std::mt19937 rng(11);
  const IdSet all = [] {
    IdSet s;
    for (DisjunctId id = 0; id < 64; ++id) s.push_back(id);
    return s;
  }();
  for (int i = 0; i < 200; ++i) {
    IdSet w = test::random_subset(rng, all);
    if (w.empty()) continue;
    EXPECT_TRUE(build_model(3, w).satisfies_s4_frame());
  }
}

TEST(Model, Preconditions) {
  EXPECT_THROW(build_model(1, {}), InputError);
  EXPECT_THROW(build_model(1, {4}), InputError);
  EXPECT_THROW(build_model(7, {0}), InputError);
}

TEST(Model, SelfSatisfying) {
  EXPECT_TRUE(self_satisfying(1, {dT}));
  EXPECT_FALSE(self_satisfying(1, {dD}));
  EXPECT_TRUE(self_satisfying(1, {dD, dT}));
  EXPECT_TRUE(self_satisfying(4, test::closure_counterexample()));
}

TEST(Model, InconsistentWorldFailsItself) { EXPECT_FALSE(self_satisfying(1, {1})); }

TEST(Model, ClosureCondition) {
  EXPECT_TRUE(closure_condition(1, {dT}));
  EXPECT_FALSE(closure_condition(1, {dD}));
  EXPECT_TRUE(closure_condition(1, {dD, dT}));
}

TEST(Model, ClosureFailsOnlyAtThreeAtoms) {
  const auto failures = closure_failures(4, test::closure_counterexample());
  ASSERT_EQ(failures.size(), 1u);
  EXPECT_EQ(failures[0], 0b0111u);
}

TEST(Model, UnionFamilyAgreesWithSubsets) {
  std::mt19937 rng(5);
  for (unsigned n = 1; n <= 3; ++n) {
    const IdSet ids = consistent_ids(n);
    for (int i = 0; i < 300; ++i) {
      IdSet w = test::random_subset(rng, ids);
      if (w.empty() || w.size() > 12) continue;
      EXPECT_EQ(closure_condition(n, w), test::naive_closure(n, w));
    }
  }
  for (unsigned n = 1; n <= 2; ++n) {
    const IdSet ids = consistent_ids(n);
    for (std::uint32_t mask = 1; mask < (1U << ids.size()); ++mask) {
      IdSet w;
      for (std::size_t k = 0; k < ids.size(); ++k)
        if ((mask >> k) & 1U) w.push_back(ids[k]);
      EXPECT_EQ(closure_condition(n, w), test::naive_closure(n, w));
    }
  }
}

TEST(Model, JsonExport) {
  const Json j = to_json(build_model(1, {d0, dT}));
  EXPECT_EQ(j.dump(), R"({"worlds":[0,3],"edges":[[0,0],[3,0],[3,3]],"valuation":{"p1":[3]}})");
}

TEST(Model, DotExport) {
  const std::string dot = build_model(1, {d0, dT}).to_dot();
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("3: p1"), std::string::npos);
}
