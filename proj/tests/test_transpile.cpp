#include <gtest/gtest.h>

#include <random>

#include "sreason/transpile.hpp"
#include "sreason/harness.hpp"
#include "test_util.hpp"

namespace sreason {
namespace {

using testing::canonical_variables;
using testing::read_fixture;

Atom atom0(const std::string& p) { return Atom{p, {}}; }

// {{{1 f and rho1..rho3

TEST(FTranslate, BetaForms) {
  EXPECT_EQ(f_translate(parse_lars_formula("q(X)")).str(), "q(X)");
  EXPECT_EQ(f_translate(parse_lars_formula("not q")).str(), "not q");
  EXPECT_EQ(f_translate(parse_lars_formula("wplus[2] diamond q")).str(), "q in [2]");
  EXPECT_EQ(f_translate(parse_lars_formula("wplus[1] box q")).str(), "q always in [1]");
  EXPECT_EQ(f_translate(parse_lars_formula("wplus[0] at[T] true and at[T-3] q")).str(), "q in {3}");
  EXPECT_EQ(f_translate(parse_lars_formula("at[T-3] q and wplus[0] at[T] true")).str(), "q in {3}");
  EXPECT_THROW(f_translate(parse_lars_formula("diamond q")), UnsupportedProgram);
  EXPECT_THROW(f_translate(parse_lars_formula("q or r")), UnsupportedProgram);
}

TEST(Rho1, BoxOfWindowBox) {
  auto out = rho1(parse_lars("#stream q/0.\nbox(p <- wplus[1] box q).\n"));
  ASSERT_EQ(out.program.rules.size(), 1u);
  const auto& r = out.program.rules[0];
  EXPECT_EQ(r.form, RuleForm::Permanent);
  EXPECT_EQ(r.head.predicate, "p");
  ASSERT_EQ(r.body.size(), 1u);
  EXPECT_EQ(r.body[0].atom.kind, StreamingKind::AlwaysIn);
  EXPECT_EQ(r.body[0].atom.offsets, (std::set<std::int64_t>{0, 1}));
  EXPECT_TRUE(out.aux_predicates.empty());
  ASSERT_EQ(out.provenance.size(), 1u);
  EXPECT_EQ(out.provenance[0].helper, "f");
}

TEST(Rho2, TrafficGolden) {
  auto out = rho2(parse_lars(read_fixture("traffic.lars")));
  EXPECT_EQ(print_ldsr(out.program),
            "#stream onLane/3.\n"
            "inNetwork(Veh) :- onLane(Veh,X,Y).\n"
            "#temp appears(Veh) :- onLane(Veh,X,Y), not inNetwork(Veh) in {1}.\n"
            "#temp disappears(Veh) :- inNetwork(Veh) in {1}, not inNetwork(Veh).\n");
}

// The printed disappears rule reads onLane at T-1 instead of inNetwork; the
// two agree because inNetwork is exactly the projection of onLane.
TEST(Rho2, TrafficMatchesOnLaneVariant) {
  auto ours = rho2(parse_lars(read_fixture("traffic.lars"))).program;
  auto printed = parse_ldsr(
      "#stream onLane/3.\n"
      "inNetwork(Veh) :- onLane(Veh,X,Y).\n"
      "#temp appears(Veh) :- onLane(Veh,X,Y), not inNetwork(Veh) in {1}.\n"
      "#temp disappears(Veh) :- onLane(Veh,X,Y) in {1}, not inNetwork(Veh).\n");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    Stream in(n);
    for (std::size_t i = 0; i <= n; ++i) {
      for (const char* v : {"v1", "v2"}) {
        if (rng() % 2) {
          in.insert(i, parse_ground_atom(std::string("onLane(") + v + "," + std::to_string(rng() % 2) + ",0)"));
        }
      }
    }
    EXPECT_EQ(eval_answer_stream(ours, in, {}).answer_stream, eval_answer_stream(printed, in, {}).answer_stream)
        << print_stream_text(in);
  }
}

TEST(Rho3, TypeTwoRulesBecomeTemp) {
  auto out = rho3(parse_lars("#stream q/0.\np <- wplus[2] diamond q, not (at[T-1] q and wplus[0] at[T] true).\n"));
  EXPECT_EQ(print_ldsr(out.program), "#stream q/0.\n#temp p :- q in [2], not q in {1}.\n");
}

TEST(Rho123, EmptyProgram) {
  for (auto* rho : {&rho1, &rho2, &rho3}) {
    auto out = (*rho)(LarsProgram{});
    EXPECT_TRUE(out.program.rules.empty());
    EXPECT_TRUE(out.provenance.empty());
  }
}

TEST(Rho123, RefusalNamesTheCondition) {
  try {
    rho3(parse_lars("#stream q/0.\nbox(p <- q).\n"));
    FAIL() << "expected UnsupportedProgram";
  } catch (const UnsupportedProgram& e) {
    EXPECT_NE(std::string(e.what()).find("not in F3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("F3 (i)"), std::string::npos);
  }
  EXPECT_THROW(rho1(parse_lars(read_fixture("p1.lars"))), UnsupportedProgram);
  EXPECT_THROW(rho2(parse_lars("#stream q/0.\np <- q.\nbox(r <- p).\n")), UnsupportedProgram);
}

// {{{1 sigma

TEST(Sigma, AtLeastWitnessesAreDistinct) {
  TimeVars v({});
  EXPECT_EQ(sigma(StreamingAtom::at_least(atom0("a"), 2, {0, 1, 2}), "T", v)->str(),
            "(at[T1] a and (T1 = T or T1 = T-1 or T1 = T-2)) and (at[T2] a and (T2 = T or T2 = T-1 or T2 = T-2)) "
            "and T1 != T2");
}

TEST(Sigma, AlwaysInGuardsTheStreamStart) {
  TimeVars v({});
  EXPECT_EQ(sigma(StreamingAtom::always_in(atom0("a"), {0, 1}), "T", v)->str(),
            "(at[T1] a and T1 = T) and (at[T2] a and T2 = T-1 or not at[T-1] true)");
}

TEST(Sigma, CountExcludesAnExtraWitness) {
  TimeVars v({});
  EXPECT_EQ(sigma(StreamingAtom::count(atom0("a"), Term::number(1), {0, 1}), "T", v)->str(),
            "(at[T1] a and (T1 = T or T1 = T-1)) and not (at[T2] a and T2 != T1 and (T2 = T or T2 = T-1))");
}

TEST(Sigma, FreshVariablesAvoidRuleVariables) {
  TimeVars v({"T", "T1"});
  auto f = sigma(StreamingAtom::bare(atom0("a")), v.reference(), v);
  EXPECT_EQ(formula_variables(f).count("T1"), 0u);
  EXPECT_NE(v.reference(), "T");
}

// σ(α) holds at t exactly when α is entailed by Σ|_t, for every stream over
// one nullary predicate up to length 4.
TEST(Sigma, MatchesEntailmentExhaustively) {
  const Atom a = atom0("a");
  const GroundAtom ga{"a", {}};
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
      Stream s(n);
      for (std::size_t i = 0; i <= n; ++i) {
        if (mask & (1u << i)) s.insert(i, ga);
      }
      for (unsigned dmask = 1; dmask < 16; ++dmask) {
        std::set<std::int64_t> d;
        for (int k = 0; k < 4; ++k) {
          if (dmask & (1u << k)) d.insert(k);
        }
        std::vector<StreamingAtom> atoms{StreamingAtom::always_in(a, d)};
        for (std::int64_t c = 1; c <= 3; ++c) {
          atoms.push_back(StreamingAtom::at_least(a, c, d));
          atoms.push_back(StreamingAtom::count(a, Term::number(c), d));
        }
        for (const auto& alpha : atoms) {
          TimeVars v({});
          auto phi = lf::conj({lf::now_anchor("T"), sigma(alpha, "T", v)});
          for (std::size_t t = 0; t <= n; ++t) {
            const bool want = entails(restrict_to_time(s, t), StreamingLiteral{false, alpha});
            const Interval all{0, static_cast<std::int64_t>(n)};
            ASSERT_EQ(eval_formula_exists(s, {}, all, static_cast<std::int64_t>(t), phi), want)
                << alpha.str() << " at " << t << " on\n" << print_stream_text(s);
            ASSERT_EQ(eval_formula_exists(s, {}, all, static_cast<std::int64_t>(t), lf::neg(phi)), !want)
                << "not " << alpha.str() << " at " << t << " on\n" << print_stream_text(s);
            ++checked;
          }
        }
      }
    }
  }
  EXPECT_GT(checked, 10000u);
}

// {{{1 C_alpha

TEST(CAlpha, RuleCounts) {
  const Atom a = atom0("a");
  auto two = c_alpha_rules(StreamingAtom::count(a, Term::variable("C"), {0, 1}));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[2].str(),
            "box(aux__count_a_0_2(a,0,1,C) <- wplus[0] at[T] true, aux__present_a_0_2(a,0,1,C), "
            "not aux__present_a_0_2(a,0,1,C+1)).");
  EXPECT_EQ(c_alpha_rules(StreamingAtom::count(a, Term::variable("C"), {3})).size(), 2u);
}

// The count atom holds with value k at t exactly when the observation has
// k >= 1 members containing `a`.
TEST(CAlpha, CountAtomMatchesObservation) {
  const GroundAtom ga{"a", {}};
  const std::set<std::int64_t> d{0, 1, 3};
  const auto alpha = StreamingAtom::count(atom0("a"), Term::variable("C"), d);
  LarsProgram p;
  p.signature.declare({"a", PredicateKind::StreamExtensional, 0});
  p.rules = c_alpha_rules(alpha);
  for (const auto& r : p.rules) {
    p.signature.ensure(r.head_atom().predicate, r.head_atom().args.size(), PredicateKind::Intensional);
  }
  const std::string count_pred = count_predicate(alpha);
  std::set<Constant> dom{Constant::symbol("a")};
  for (std::int64_t k = 0; k <= 4; ++k) dom.insert(Constant::number(k));
  const std::size_t n = 4;
  for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
    Stream s(n);
    for (std::size_t i = 0; i <= n; ++i) {
      if (mask & (1u << i)) s.insert(i, ga);
    }
    auto as = eval_answer_stream_lars(p, s, {}, n, dom).stream;
    for (std::size_t t = 0; t <= n; ++t) {
      const auto hits = count_in_observation(restrict_to_time(s, t), ga, d).hits;
      std::vector<std::int64_t> values;
      for_each_with_predicate(as[t], count_pred, [&](const GroundAtom& x) { values.push_back(x.args.back().as_number()); });
      if (hits == 0) {
        EXPECT_TRUE(values.empty()) << "t=" << t << "\n" << print_stream_text(s);
      } else {
        EXPECT_EQ(values, (std::vector<std::int64_t>{static_cast<std::int64_t>(hits)})) << "t=" << t;
      }
    }
  }
}

// {{{1 g, d_P and rho4..rho7

TEST(GTranslate, TempHeadReadsAuxCopyAtOffsetZero) {
  auto p = parse_ldsr("#stream r/0.\np :- q in {0,1}.\n#temp q :- r.\n");
  TimeVars v(p.rules[0].variables());
  EXPECT_EQ(g_translate(p.rules[0].body[0], p, "T", v)->str(), "q__temp or at[T1] q and T1 = T-1");
  TimeVars w({});
  EXPECT_EQ(gprime_translate(StreamingLiteral{true, StreamingAtom::bare(atom0("r"))}, "T", w)->str(),
            "not (at[T1] r and T1 = T)");
}

TEST(GTranslate, PermanentHeadsStayVisible) {
  auto p = parse_ldsr("#stream r/0.\n#stream s/0.\np :- q.\n#temp q :- r.\nq :- s.\n");
  TimeVars v({});
  EXPECT_EQ(g_translate(p.rules[0].body[0], p, "T", v)->str(), "q or q__temp");
}

TEST(DP, DisjunctionOverTempRules) {
  auto p = parse_ldsr("#stream r/1.\np :- q(c1).\n#temp q(X) :- r(X).\n");
  TimeVars v({});
  EXPECT_EQ(canonical_variables(d_P(Atom{"q", {Term::symbol("c1")}}, p, "T", v)->str()),
            canonical_variables("at[T1] q(c1) and T1 = T or (at[T2] r(X) and T2 = T) and c1 = X"));
}

TEST(Rho4, TempRuleGetsBoxCompanion) {
  auto out = rho4(parse_ldsr("#stream r/0.\np :- q in {0,1}.\n#temp q :- r.\n"));
  EXPECT_EQ(print_lars(out.program),
            "#stream r/0.\n"
            "box(p <- wplus[0] at[T] true, q__temp or at[T1] q and T1 = T-1).\n"
            "q <- wplus[0] at[T] true, at[T1] r and T1 = T.\n"
            "box(q__temp <- wplus[0] at[T] true, at[T1] r and T1 = T).\n");
  EXPECT_EQ(out.aux_predicates, (std::set<std::string>{"q__temp"}));
}

TEST(Rho5, CountVariableUsesAuxRules) {
  auto out = rho5(parse_ldsr("#stream r/0.\n#temp q :- r in {1}.\n#temp p :- not r, r count C in {0,1}.\n"));
  ASSERT_EQ(out.program.rules.size(), 5u);
  EXPECT_EQ(out.program.rules[1].str(),
            "p <- wplus[0] at[T] true, not (at[T1] r and T1 = T), aux__count_r_0_2(r,0,1,C).");
  EXPECT_EQ(out.aux_predicates, (std::set<std::string>{"aux__count_r_0_2", "aux__present_r_0_2"}));
  std::size_t calpha = 0;
  for (const auto& e : out.provenance) {
    if (e.helper == "C_alpha") {
      ++calpha;
      EXPECT_FALSE(e.source_rule);
    }
  }
  EXPECT_EQ(calpha, 3u);
}

TEST(Rho6, AlwaysInTemplate) {
  auto out = rho6(parse_ldsr("#stream r/0.\n#temp q :- r always in {0,2}.\n"));
  EXPECT_EQ(print_lars(out.program),
            "#stream r/0.\n"
            "q <- wplus[0] at[T] true, (at[T1] r and T1 = T) and (at[T2] r and T2 = T-2 or not at[T-2] true).\n");
}

TEST(Rho7, TrainGolden) {
  auto out = rho7(parse_ldsr(read_fixture("train.ldsr")));
  EXPECT_EQ(canonical_variables(print_lars(out.program)),
            canonical_variables("#stream train_pass/0.\n"
                                "box(irregular <- wplus[0] at[T] true, at[Ta] train_pass and Ta = T, "
                                "at[Tb] train_pass and (Tb = T-1 or Tb = T-2)).\n"));
}

TEST(Rho7, PermanentBodyReadsDerivationsOfTempHead) {
  auto out = rho7(parse_ldsr("#stream r/0.\np :- q in {0,1}.\n#temp q :- r.\n"));
  EXPECT_EQ(out.program.rules[0].str(),
            "box(p <- wplus[0] at[T] true, (at[T1] q and T1 = T or at[T2] r and T2 = T) or at[T3] q and T3 = T-1).");
}

TEST(Rho47, EmptyProgram) {
  for (auto* rho : {&rho4, &rho5, &rho6, &rho7}) {
    EXPECT_TRUE((*rho)(LdsrProgram{}).program.rules.empty());
  }
}

TEST(Rho47, RefusesOutsideFragment) {
  EXPECT_THROW(rho4(parse_ldsr("#stream a/1.\n#stream b/2.\na(Y) :- a(X), b(X,Y).\n")), UnsupportedProgram);
  EXPECT_THROW(rho5(parse_ldsr("#stream r/0.\np :- r.\n")), UnsupportedProgram);
  EXPECT_THROW(rho6(parse_ldsr("#stream r/0.\n#temp p :- r count C in {0,1}.\n")), UnsupportedProgram);
  EXPECT_THROW(rho7(parse_ldsr("#stream r/0.\n#temp q :- r.\n#temp p :- q.\n")), UnsupportedProgram);
}

TEST(Rho47, AuxNameCollision) {
  EXPECT_THROW(rho4(parse_ldsr("#stream r/0.\n#stream q__temp/0.\np :- q, q__temp.\n#temp q :- r.\n")),
               ValidationError);
  EXPECT_THROW(rho5(parse_ldsr("#stream r/0.\n#stream aux__count_r_0_1/4.\n#temp p :- r count C in {1}.\n")),
               ValidationError);
}

TEST(RhoFragment, Table) {
  for (int k = 1; k <= 7; ++k) EXPECT_EQ(rho_fragment(k), static_cast<Fragment>(k));
  EXPECT_THROW(rho_fragment(8), std::exception);
}

// {{{1 properties over generated instances

TEST(TranslationProperties, OutputsOnlyAddDeclaredAuxPredicates) {
  for (int k = 1; k <= 7; ++k) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto inst = gen_fragment_instance(rho_fragment(k), seed);
      auto src = inst.tuple();
      auto out = translate_tuple(src, k);
      std::set<std::string> allowed = src.predicates();
      std::set<std::string> aux;
      if (k <= 3) {
        aux = rho1(LarsProgram{}).aux_predicates;
      } else {
        const auto& p = std::get<LdsrProgram>(inst.program);
        aux = (k == 4 ? rho4(p) : k == 5 ? rho5(p) : k == 6 ? rho6(p) : rho7(p)).aux_predicates;
        for (const auto& a : aux) {
          EXPECT_TRUE(a.rfind(kAuxPrefix, 0) == 0 || a.ends_with(kTempSuffix)) << a;
        }
      }
      allowed.insert(aux.begin(), aux.end());
      for (const auto& pred : std::visit([](const auto& p) { return p.predicates(); }, out.program)) {
        EXPECT_TRUE(allowed.count(pred)) << "rho" << k << " seed " << seed << " introduced " << pred;
      }
    }
  }
}

TEST(TranslationProperties, OutputsAreStratified) {
  for (int k = 1; k <= 7; ++k) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto out = translate_tuple(gen_fragment_instance(rho_fragment(k), seed).tuple(), k);
      if (k <= 3) {
        EXPECT_NO_THROW(check_stratified(std::get<LdsrProgram>(out.program))) << "rho" << k << " seed " << seed;
      } else {
        EXPECT_NO_THROW(negation_strata(std::get<LarsProgram>(out.program))) << "rho" << k << " seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace sreason
