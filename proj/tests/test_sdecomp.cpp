#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "s4adm/io.hpp"
#include "s4adm/sdecomp.hpp"
#include "worlds.hpp"

using namespace s4adm;

namespace {

constexpr DisjunctId d0 = 0;
constexpr DisjunctId dD = 2;
constexpr DisjunctId dT = 3;

IdSet ids(const std::string& text) {
  IdSet out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(static_cast<DisjunctId>(std::stoul(tok)));
  return normalize(out);
}

/// "1,2,3/1,2 ; 1,2,3/1,3" over n = 2, so every index up to 15 is a valid id.
RuleSystem sys(const std::string& text) {
  std::vector<RuleEntry> es;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ';')) {
    part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
    const auto slash = part.find('/');
    es.push_back({ids(part.substr(0, slash)), ids(part.substr(slash + 1))});
  }
  return make_system(2, es);
}

std::vector<RuleSystem> systems(std::initializer_list<const char*> texts) {
  std::vector<RuleSystem> out;
  for (const char* t : texts) out.push_back(sys(t));
  return out;
}

std::string show(const RuleSystem& a) {
  std::string out;
  for (const auto& e : a.entries) {
    if (!out.empty()) out += " ; ";
    for (std::size_t k = 0; k < e.w.size(); ++k) out += (k ? "," : "") + std::to_string(e.w[k]);
    out += "/";
    for (std::size_t k = 0; k < e.j.size(); ++k) out += (k ? "," : "") + std::to_string(e.j[k]);
  }
  return out;
}

std::string show(const std::vector<RuleSystem>& xs) {
  std::string out;
  for (const auto& a : xs) out += "[" + show(a) + "] ";
  return out;
}

RuleSystem random_system(std::mt19937& rng, unsigned n) {
  const IdSet all = consistent_ids(n);
  std::vector<RuleEntry> es;
  const int m = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < m; ++k) {
    IdSet w = test::random_subset(rng, all);
    if (w.empty()) w.push_back(all[rng() % all.size()]);
    es.push_back({w, test::random_subset(rng, w)});
  }
  return make_system(n, es);
}

/// Emptiness is preserved by every applicable action and by simplification,
/// and the branches an action produces are disjoint where they must be.
void check_algebra(const RuleSystem& a) {
  const bool empty = is_empty(a);
  EXPECT_EQ(empty, is_empty(simplify(a))) << show(a);
  IdSet every;
  IdSet common = a.entries.front().w;
  for (const auto& e : a.entries) {
    every = set_union(every, e.w);
    common = set_intersection(common, e.w);
  }
  for (DisjunctId i : common) {
    const auto bs = action_plus(a, {i});
    bool all_empty = true;
    for (const auto& b : bs) all_empty = all_empty && is_empty(b);
    EXPECT_EQ(empty, all_empty) << "+" << i << " on " << show(a);
    for (std::size_t x = 0; x < bs.size(); ++x)
      for (std::size_t y = x + 1; y < bs.size(); ++y)
        EXPECT_TRUE(is_empty(intersect(bs[x], bs[y]))) << "+" << i << " on " << show(a);
  }
  bool strict = true;
  for (const auto& e : a.entries) strict = strict && e.j.size() < e.w.size();
  if (!strict) return;
  for (DisjunctId i : every) {
    const auto bs = action_minus(a, {i});
    bool all_empty = true;
    for (const auto& b : bs) all_empty = all_empty && is_empty(b);
    EXPECT_EQ(empty, all_empty) << "-" << i << " on " << show(a);
    for (std::size_t y = 1; y < bs.size(); ++y)
      EXPECT_TRUE(is_empty(intersect(bs[0], bs[y]))) << "-" << i << " on " << show(a);
  }
}

}  // namespace

TEST(Sdecomp, MakeSystem) {
  EXPECT_THROW(make_system(1, {{{dD}, {dT}}}), InputError);
  EXPECT_THROW(make_system(1, {{{9}, {}}}), InputError);
  EXPECT_EQ(make_system(1, {{{dT, dD}, {dD}}, {{dD, dT}, {dD}}}).entries.size(), 1u);
}

TEST(Sdecomp, Emptiness) {
  EXPECT_FALSE(is_empty(make_system(1, {{{dD, dT}, {dD}}})));
  EXPECT_TRUE(is_empty(make_system(1, {{{dD, dT}, {dD, dT}}})));
  EXPECT_TRUE(is_empty(make_system(1, {{{dD}, {}}})));
  // p := _|_ turns the premise into d0 and rejects the conclusion dD.
  EXPECT_FALSE(is_empty(make_system(1, {{{d0, dD}, {dD}}})));
}

TEST(Sdecomp, PlusExamples) {
  const auto bs = action_plus(sys("1,2,3,4,10,12/1"), {2});
  EXPECT_EQ(bs, systems({"1,2,3,4,10,12/1,2", "1,2/1"}));
  const RuleSystem a = make_system(1, {{{dD, dT}, {dT}}});
  const auto neutral = action_plus(a, {});
  ASSERT_EQ(neutral.size(), 2u);
  EXPECT_EQ(neutral[0], a);
  EXPECT_TRUE(trivially_empty(neutral[1]));
  EXPECT_EQ(action_plus(sys("1,2,3/1 ; 1,2,4/2"), {1}).size(), 4u);
  EXPECT_THROW(action_plus(sys("1,2/1"), {3}), InputError);
}

TEST(Sdecomp, MinusExamples) {
  const auto bs = action_minus(sys("1,2,3,4,10,12/1,2"), {2});
  EXPECT_EQ(bs, systems({"1,3,4,10,12/1", "1,2,3,4,10,12/1,2 ; 1,2,3,4,10,12/1,3,4,10,12"}));
  const RuleSystem a = sys("1,2/1");
  EXPECT_EQ(action_minus(a, {5}).front(), a);
  EXPECT_EQ(action_minus(sys("1,2,3/1 ; 1,2,4/2"), {1}).size(), 3u);
  EXPECT_THROW(action_minus(sys("1,2/1,2"), {1}), InputError);
}

TEST(Sdecomp, SimplifyExamples) {
  EXPECT_EQ(simplify(sys("1,2,3/1,2 ; 1,2,3,4,10,12/1,3,4,10,12")), sys("1,2,3/1,2 ; 1,2,3/1,3"));
  EXPECT_EQ(simplify(make_system(2, {{{1, 2}, {1}}, {{1, 2}, {1}}})), sys("1,2/1"));
  EXPECT_EQ(simplify(sys("1,2,3/1 ; 1,2,3/1,2")), sys("1,2,3/1,2"));
}

TEST(Sdecomp, IntersectExamples) {
  const RuleSystem a = sys("1,2,3/1 ; 1,2,3/2");
  EXPECT_EQ(intersect(a, RuleSystem{2, {}}), a);
  EXPECT_EQ(intersect(a, a), a);
  // Canonical systems over different W never share a member.
  const RuleSystem c1 = make_system(1, {{{dD, dT}, {dD}}, {{dD, dT}, {dT}}});
  const RuleSystem c2 = make_system(1, {{{dT}, {}}});
  ASSERT_TRUE(is_canonical(c1));
  ASSERT_TRUE(is_canonical(c2));
  EXPECT_FALSE(is_empty(c1));
  EXPECT_FALSE(is_empty(c2));
  EXPECT_TRUE(is_empty(intersect(c1, c2)));
  EXPECT_THROW(intersect(c1, a), InputError);
}

TEST(Sdecomp, CanonicalInputIsOneLeaf) {
  const RuleSystem c = make_system(1, {{{dD, dT}, {dD}}, {{dD, dT}, {dT}}});
  const Decomposition d = decompose(c);
  ASSERT_EQ(d.leaves.size(), 1u);
  EXPECT_TRUE(d.leaves[0].trace.empty());
  EXPECT_EQ(d.leaves[0].kind, LeafKind::Canonical);
}

TEST(Sdecomp, SmallDecomposition) {
  const RuleSystem a = make_system(1, {{{dD, dT}, {dT}}});
  const Decomposition d = decompose(a);
  EXPECT_TRUE(d.complete);
  // -3 splits off ({2}/{}), which is empty, and adds dD,dT/dD.
  ASSERT_EQ(d.leaves.size(), 2u);
  EXPECT_EQ(d.leaves[0].trace, (std::vector<std::string>{"-3:0"}));
  EXPECT_EQ(d.leaves[0].kind, LeafKind::Empty);
  EXPECT_EQ(d.leaves[1].trace, (std::vector<std::string>{"-3:1"}));
  EXPECT_EQ(d.leaves[1].kind, LeafKind::Canonical);
  EXPECT_FALSE(is_empty(a));
}

TEST(Sdecomp, DecompositionLeavesPartitionTheRoot) {
  std::mt19937 rng(53);
  for (int t = 0; t < 60; ++t) {
    const RuleSystem a = random_system(rng, 2);
    const Decomposition d = decompose(a);
    ASSERT_TRUE(d.complete);
    bool any_nonempty = false;
    for (const auto& leaf : d.leaves) {
      EXPECT_NE(leaf.kind, LeafKind::Open);
      if (leaf.kind == LeafKind::Canonical) {
        EXPECT_FALSE(is_empty(leaf.system));
        any_nonempty = true;
      }
    }
    EXPECT_EQ(!is_empty(a), any_nonempty) << show(a);
    for (std::size_t x = 0; x < d.leaves.size(); ++x)
      for (std::size_t y = x + 1; y < d.leaves.size(); ++y)
        EXPECT_TRUE(is_empty(intersect(d.leaves[x].system, d.leaves[y].system))) << show(a);
  }
}

TEST(Sdecomp, StepCap) {
  const Decomposition d = decompose(sys("1,2,3,4,5,6,7,8/1"), {3, kDefaultSubsetCap});
  EXPECT_FALSE(d.complete);
  EXPECT_EQ(d.steps, 3u);
  bool open = false;
  for (const auto& leaf : d.leaves) open = open || leaf.kind == LeafKind::Open;
  EXPECT_TRUE(open);
}

TEST(Sdecomp, WorkedExampleReplay) {
  std::vector<RuleSystem> xs = systems({"1,2,3,4,10,12/1"});
  xs = apply_step(xs, "+2");
  EXPECT_EQ(xs, systems({"1,2,3,4,10,12/1,2", "1,2/1"})) << show(xs);
  xs = apply_step(xs, "-2");
  EXPECT_EQ(xs, systems({"1,3,4,10,12/1", "1,2,3,4,10,12/1,2 ; 1,2,3,4,10,12/1,3,4,10,12", "1,2/1"}))
      << show(xs);
  xs = apply_step(xs, "+3");
  EXPECT_EQ(xs, systems({"1,3,4,10,12/1,3", "1,3/1", "1,2,3,4,10,12/1,2,3 ; 1,2,3,4,10,12/1,3,4,10,12",
                         "1,2,3/1,2 ; 1,2,3,4,10,12/1,3,4,10,12", "1,2/1"}))
      << show(xs);
  xs = apply_step(xs, "s");
  EXPECT_EQ(xs, systems({"1,3,4,10,12/1,3", "1,3/1", "1,2,3,4,10,12/1,2,3 ; 1,2,3,4,10,12/1,3,4,10,12",
                         "1,2,3/1,2 ; 1,2,3/1,3", "1,2/1"}))
      << show(xs);
  xs = apply_step(xs, "+4");
  EXPECT_EQ(xs, systems({"1,3,4,10,12/1,3,4", "1,3,4/1,3", "1,3/1",
                         "1,2,3,4,10,12/1,2,3,4 ; 1,2,3,4,10,12/1,3,4,10,12",
                         "1,2,3,4/1,2,3 ; 1,2,3,4,10,12/1,3,4,10,12", "1,2,3/1,2 ; 1,2,3/1,3", "1,2/1"}))
      << show(xs);
  xs = apply_step(xs, "s");
  EXPECT_EQ(xs[4], sys("1,2,3,4/1,2,3 ; 1,2,3,4/1,3,4"));
}

TEST(Sdecomp, StepSyntax) {
  const auto xs = systems({"1,2/1"});
  EXPECT_THROW(apply_step(xs, "x2"), InputError);
  EXPECT_THROW(apply_step(xs, "+"), InputError);
  EXPECT_THROW(apply_step(xs, "+2a"), InputError);
}

TEST(Sdecomp, AlgebraOnOneVariable) {
  const IdSet all = consistent_ids(1);
  int count = 0;
  for (std::uint32_t wm = 1; wm < 8; ++wm) {
    IdSet w;
    for (std::size_t k = 0; k < 3; ++k)
      if ((wm >> k) & 1U) w.push_back(all[k]);
    for (std::uint32_t jm = 0; jm < (1U << w.size()); ++jm) {
      IdSet j;
      for (std::size_t k = 0; k < w.size(); ++k)
        if ((jm >> k) & 1U) j.push_back(w[k]);
      check_algebra(make_system(1, {{w, j}}));
      ++count;
    }
  }
  EXPECT_EQ(count, 26);
}

TEST(Sdecomp, AlgebraOnTwoVariables) {
  std::mt19937 rng(59);
  for (int t = 0; t < 100; ++t) check_algebra(random_system(rng, 2));
}

TEST(Sdecomp, Monotone) {
  std::mt19937 rng(61);
  for (int t = 0; t < 200; ++t) {
    const RuleSystem a = random_system(rng, 2);
    const RuleSystem b = random_system(rng, 2);
    std::vector<RuleEntry> both = a.entries;
    both.insert(both.end(), b.entries.begin(), b.entries.end());
    if (is_empty(a)) {
      EXPECT_TRUE(is_empty(make_system(2, both)));
    }
  }
}

TEST(Sdecomp, JsonRoundTrip) {
  const RuleSystem a = sys("1,2,3/1,2 ; 1,2,3/1,3");
  EXPECT_EQ(to_json(a).dump(), R"([{"W":[1,2,3],"J":[1,2]},{"W":[1,2,3],"J":[1,3]}])");
  EXPECT_EQ(system_from_json(2, to_json(a)), a);
  EXPECT_THROW(system_from_json(2, parse_json(R"([{"W":[1],"J":[2]}])")), InputError);
  const auto cs = constraints_from_json(parse_json(R"([{"upper":[3,2],"lower":[2]}])"));
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].upper, (IdSet{dD, dT}));
  const Json d = to_json(decompose(make_system(1, {{{dD, dT}, {dT}}})));
  EXPECT_EQ(d["leaves"][1]["trace"][0], "-3:1");
  EXPECT_EQ(d["leaves"][1]["kind"], "canonical");
}
