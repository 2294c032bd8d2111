#include <gtest/gtest.h>

#include "sreason/fragments.hpp"
#include "test_util.hpp"

namespace sreason {
namespace {

using testing::read_fixture;

bool has_violation(const FragmentVerdict& v, Fragment f, const std::string& cond) {
  for (const auto& x : v.violations) {
    if (x.fragment == f && x.condition == cond) return true;
  }
  return false;
}

// {{{1 shapes

TEST(RuleShape, TypeOneBoxImplication) {
  auto p = parse_lars("box(h <- wplus[3] diamond p, not q, wplus[0] at[T] true and at[T-2] r).");
  auto s = classify_rule_shape(p.rules[0], p.signature);
  ASSERT_EQ(s.kind, ShapeKind::TypeI);
  EXPECT_EQ(s.head.predicate, "h");
  ASSERT_EQ(s.betas.size(), 3u);
  EXPECT_EQ(s.betas[0].kind, BetaKind::WindowDiamond);
  EXPECT_EQ(s.betas[0].window, 3);
  EXPECT_FALSE(s.betas[0].negative);
  EXPECT_EQ(s.betas[1].kind, BetaKind::Atom);
  EXPECT_TRUE(s.betas[1].negative);
  EXPECT_EQ(s.betas[2].kind, BetaKind::Offset);
  EXPECT_EQ(s.betas[2].offset, 2);
  EXPECT_EQ(s.betas[2].time_var, "T");
}

TEST(RuleShape, OffsetPatternCommutes) {
  auto a = match_beta(parse_lars_formula("at[T-1] p and wplus[0] at[T] true"));
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->kind, BetaKind::Offset);
  EXPECT_EQ(a->offset, 1);
  auto b = match_beta(parse_lars_formula("not (wplus[0] at[T] true and at[T] p)"));
  ASSERT_TRUE(b.has_value());
  EXPECT_TRUE(b->negative);
  EXPECT_EQ(b->offset, 0);
}

TEST(RuleShape, RejectsNearMisses) {
  EXPECT_FALSE(match_beta(parse_lars_formula("wplus[0] at[T] true and at[U-1] p")));
  EXPECT_FALSE(match_beta(parse_lars_formula("wplus[1] at[T] true and at[T-1] p")));
  EXPECT_FALSE(match_beta(parse_lars_formula("wplus[0] at[T] true and at[T+1] p")));
  EXPECT_FALSE(match_beta(parse_lars_formula("not not p")));
  EXPECT_FALSE(match_beta(parse_lars_formula("diamond p")));
  EXPECT_FALSE(match_beta(parse_lars_formula("wplus[2] diamond (p and q)")));
  EXPECT_TRUE(match_beta(parse_lars_formula("wplus[2] box p")));
}

TEST(RuleShape, OtherShapes) {
  auto p = parse_lars("#stream s/0.\n@[T] a <- @[T] c.\ns <- c.\nx <- diamond c.\n");
  for (const auto& r : p.rules) {
    EXPECT_EQ(classify_rule_shape(r, p.signature).kind, ShapeKind::Other) << r.str();
  }
}

// {{{1 M(P) and G(P)

TEST(DepGraph, Traffic) {
  auto p = parse_lars(read_fixture("traffic.lars"));
  auto g = build_dep_graph(p);
  EXPECT_EQ(g.nodes, (std::set<std::string>{"appears", "disappears", "inNetwork"}));
  std::set<DepArc> want{
      {"onLane", "inNetwork", ArcLabel::Positive},
      {"onLane", "appears", ArcLabel::Positive},
      {"inNetwork", "appears", ArcLabel::Negative},
      {"inNetwork", "disappears", ArcLabel::Positive},
      {"inNetwork", "disappears", ArcLabel::Negative},
  };
  EXPECT_EQ(g.arcs, want);
  EXPECT_TRUE(marked_predicates(p).empty());
}

TEST(DepGraph, MarkedPredicates) {
  auto p = parse_lars(
      "#stream s/0.\n"
      "b <- s.\n"
      "box(m <- b).\n"
      "box(k <- s).\n"
      "box(n <- wplus[2] diamond b, k).\n");
  EXPECT_EQ(marked_predicates(p), (std::set<std::string>{"m", "n"}));
}

// {{{1 LARS verdicts

TEST(LarsFragments, TrafficIsF2NotF3) {
  auto v = classify_lars_fragments(parse_lars(read_fixture("traffic.lars")));
  EXPECT_TRUE(v.member(Fragment::F1));
  EXPECT_TRUE(v.member(Fragment::F2));
  EXPECT_FALSE(v.member(Fragment::F3));
  EXPECT_TRUE(has_violation(v, Fragment::F3, "i"));
  EXPECT_TRUE(inclusions_hold(v));
}

TEST(LarsFragments, P1IsOutsideF1) {
  auto v = classify_lars_fragments(parse_lars(read_fixture("p1.lars")));
  EXPECT_TRUE(v.memberships.empty());
  ASSERT_TRUE(has_violation(v, Fragment::F1, "i"));
  EXPECT_EQ(v.violations[0].rule, 0u);
}

TEST(LarsFragments, MarkedInPremiseAndBody) {
  auto v = classify_lars_fragments(parse_lars(
      "#stream s/0.\n"
      "b <- s.\n"
      "box(m <- b).\n"
      "box(k <- m).\n"
      "c <- not m.\n"));
  EXPECT_FALSE(v.member(Fragment::F1));
  EXPECT_TRUE(has_violation(v, Fragment::F1, "ii"));
  EXPECT_TRUE(has_violation(v, Fragment::F1, "iii"));
  EXPECT_FALSE(has_violation(v, Fragment::F1, "iv"));
  EXPECT_TRUE(inclusions_hold(v));
}

TEST(LarsFragments, NegativeCycle) {
  auto v = classify_lars_fragments(parse_lars("#stream s/0.\na <- s, not b.\nb <- a.\n"));
  EXPECT_FALSE(v.member(Fragment::F1));
  ASSERT_TRUE(has_violation(v, Fragment::F1, "iv"));
  for (const auto& x : v.violations) {
    if (x.condition != "iv") continue;
    ASSERT_GE(x.predicates.size(), 3u);
    EXPECT_EQ(x.predicates.front(), x.predicates.back());
  }
  // a positive cycle is allowed
  auto w = classify_lars_fragments(parse_lars("#stream s/0.\na <- s, b.\nb <- a.\n"));
  EXPECT_TRUE(w.member(Fragment::F3));
}

TEST(LarsFragments, TypeTwoHeadInTypeOnePremise) {
  auto v = classify_lars_fragments(parse_lars("#stream s/0.\nb <- s.\nbox(k <- wplus[1] box b).\n"));
  EXPECT_TRUE(v.member(Fragment::F1));
  EXPECT_FALSE(v.member(Fragment::F2));
  EXPECT_TRUE(has_violation(v, Fragment::F2, "i"));
}

TEST(LarsFragments, TypeTwoOnlyIsF3) {
  auto v = classify_lars_fragments(parse_lars(
      "#stream s/1.\n"
      "a(X) <- s(X), not wplus[3] diamond b(X).\n"
      "b(X) <- wplus[0] at[T] true and at[T-2] s(X).\n"));
  EXPECT_EQ(v.memberships, (std::set<Fragment>{Fragment::F1, Fragment::F2, Fragment::F3}));
  EXPECT_TRUE(v.violations.empty());
}

// {{{1 LDSR verdicts

TEST(LdsrFragments, TrainIsF4AndF7) {
  auto v = classify_ldsr_fragments(parse_ldsr(read_fixture("train.ldsr")));
  EXPECT_EQ(v.memberships, (std::set<Fragment>{Fragment::F4, Fragment::F7}));
  EXPECT_TRUE(has_violation(v, Fragment::F5, "i"));
}

TEST(LdsrFragments, ExtensionalHeadFailsF4) {
  auto v = classify_ldsr_fragments(parse_ldsr(read_fixture("p2.ldsr")));
  EXPECT_TRUE(v.memberships.empty());
  EXPECT_TRUE(has_violation(v, Fragment::F4, "i"));
  EXPECT_TRUE(inclusions_hold(v));
}

TEST(LdsrFragments, TempChainsAndCountVariables) {
  auto temp_only = classify_ldsr_fragments(parse_ldsr(
      "#stream s/0.\n#temp a :- s at least 2 in {0,1,2}.\n#temp b :- s always in {1}.\n"));
  EXPECT_EQ(temp_only.memberships,
            (std::set<Fragment>{Fragment::F4, Fragment::F5, Fragment::F6, Fragment::F7}));

  auto chained = classify_ldsr_fragments(
      parse_ldsr("#stream s/0.\n#temp a :- s.\n#temp b :- a at least 1 in {1}.\n"));
  EXPECT_EQ(chained.memberships, (std::set<Fragment>{Fragment::F4, Fragment::F5, Fragment::F6}));
  EXPECT_TRUE(has_violation(chained, Fragment::F7, "i"));

  auto counted = classify_ldsr_fragments(parse_ldsr("#stream s/0.\n#temp a(C) :- s count C in {0,1}.\n"));
  EXPECT_EQ(counted.memberships, (std::set<Fragment>{Fragment::F4, Fragment::F5}));
  EXPECT_TRUE(has_violation(counted, Fragment::F6, "i"));
  EXPECT_TRUE(has_violation(counted, Fragment::F7, "ii"));
}

TEST(Fragments, Names) {
  EXPECT_EQ(parse_fragment("F6"), Fragment::F6);
  EXPECT_EQ(parse_fragment("2"), Fragment::F2);
  EXPECT_THROW(parse_fragment("F8"), ValidationError);
  EXPECT_EQ(to_string(Fragment::F7), "F7");
  EXPECT_TRUE(is_lars_fragment(Fragment::F3));
  EXPECT_FALSE(is_lars_fragment(Fragment::F4));
}

}  // namespace
}  // namespace sreason
