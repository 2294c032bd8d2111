#include <gtest/gtest.h>

#include "sreason/harness.hpp"
#include "sreason/transpile.hpp"
#include "test_util.hpp"

namespace sreason {
namespace {

using testing::read_fixture;
using testing::stream_of;

AtomSet atoms(const std::string& text) { return parse_atom_set(text); }

// I_i = {c} for i = tau+1, empty elsewhere; I' empties slot tau+1.
struct P1Pair {
  Stream with_c;
  Stream without_c;
};

P1Pair p1_pair(std::size_t tau, std::size_t n) {
  P1Pair out{Stream(n), Stream(n)};
  out.with_c.insert(tau + 1, parse_ground_atom("c"));
  return out;
}

// {{{1 profiles

TEST(Profiles, P2StreamingModel) {
  auto p = parse_ldsr(read_fixture("p2.ldsr"));
  const Stream in = stream_of({{"a(1)", "b(1,2)"}, {"a(1)", "b(1,2)"}, {"a(1)", "b(1,2)"}});
  LTuple tuple{p, in, {}};
  for (std::size_t t = 1; t <= in.n(); ++t) {
    auto atomic = profile_output(tuple, t, Profile::Atomic);
    EXPECT_EQ(atomic.stream[t], atoms("a(1) a(2) b(1,2)"));
    for (std::size_t i = 0; i <= in.n(); ++i) {
      if (i != t) EXPECT_TRUE(atomic.stream[i].empty());
    }
  }
}

TEST(Profiles, P2IsRejectedByLars) {
  auto p = parse_lars("#stream a/1.\n#stream b/2.\na(Y) <- a(X), b(X,Y).\n");
  const Stream in = stream_of({{"a(1)", "b(1,2)"}, {"a(1)", "b(1,2)"}});
  EXPECT_THROW(eval_answer_stream_lars(p, in, {}, 1), NoAnswerStream);
  Stream candidate = in;
  candidate.insert(1, parse_ground_atom("a(2)"));
  EXPECT_FALSE(verify_answer_stream(p, in, {}, 1, candidate).ok);
}

TEST(Profiles, P1WitnessPair) {
  auto p = parse_lars(read_fixture("p1.lars"));
  for (std::size_t tau = 1; tau <= 3; ++tau) {
    auto pair = p1_pair(tau, 5);
    LTuple with{p, pair.with_c, {}};
    LTuple without{p, pair.without_c, {}};
    EXPECT_EQ(profile_output(with, tau, Profile::Atomic).stream[tau], atoms("a"));
    EXPECT_TRUE(profile_output(without, tau, Profile::Atomic).stream[tau].empty());
    // atomic differs, so bound and full must differ too
    for (auto phi : {Profile::Atomic, Profile::Bound, Profile::Full}) {
      EXPECT_FALSE(compare_streams(profile_output(with, tau, phi).stream, profile_output(without, tau, phi).stream).equal)
          << to_string(phi);
    }
  }
}

TEST(Profiles, EmptyProgramFullProfileCopiesInput) {
  const Stream in = stream_of({{"s(1)"}, {}, {"s(2)"}, {"s(1)", "s(3)"}});
  const AtomSet bg = atoms("g(1)");
  for (LTuple tuple : {LTuple{LdsrProgram{}, in, bg}, LTuple{LarsProgram{}, in, bg}}) {
    auto full = profile_output(tuple, 1, Profile::Full).stream;
    for (std::size_t i = 0; i <= in.n(); ++i) {
      AtomSet want = in[i];
      want.insert(bg.begin(), bg.end());
      EXPECT_EQ(full[i], want) << to_string(tuple.language()) << " slot " << i;
    }
  }
}

TEST(Profiles, OutOfRange) {
  LTuple tuple{LdsrProgram{}, Stream(2), {}};
  EXPECT_THROW(profile_output(tuple, 3, Profile::Atomic), std::out_of_range);
}

TEST(Profiles, CoherentOnGeneratedInstances) {
  for (auto lang : {Language::Ldsr, Language::Lars}) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      auto tuple = gen_any_instance(lang, seed).tuple();
      for (std::size_t t = 0; t <= tuple.input.n(); ++t) {
        auto atomic = profile_output(tuple, t, Profile::Atomic).stream;
        auto bound = profile_output(tuple, t, Profile::Bound).stream;
        auto full = profile_output(tuple, t, Profile::Full).stream;
        EXPECT_EQ(atomic[t], bound[t]) << to_string(lang) << " seed " << seed << " t " << t;
        for (std::size_t i = 0; i <= t; ++i) EXPECT_EQ(bound[i], full[i]);
        for (std::size_t i = t + 1; i <= tuple.input.n(); ++i) EXPECT_TRUE(bound[i].empty());
      }
    }
  }
}

TEST(Profiles, ParseNames) {
  EXPECT_EQ(parse_profile("bound"), Profile::Bound);
  EXPECT_THROW(parse_profile("partial"), ValidationError);
}

// {{{1 expressibility

TEST(Expressibility, TrafficRho2Bound) {
  auto lars = parse_lars(read_fixture("traffic.lars"));
  auto ldsr = rho2(lars).program;
  const Stream in = stream_of({{"onLane(v1,1,0)"}, {"onLane(v1,1,1)", "onLane(v2,0,0)"}, {"onLane(v2,0,1)"}, {}});
  for (std::size_t t = 0; t <= in.n(); ++t) {
    auto v = check_expressibility(LTuple{lars, in, {}}, LTuple{ldsr, in, {}}, t, Profile::Bound, true);
    EXPECT_TRUE(v.equal) << "t=" << t;
  }
  auto at = [&](std::size_t t) { return profile_output(LTuple{ldsr, in, {}}, t, Profile::Atomic).stream[t]; };
  EXPECT_TRUE(at(1).count(parse_ground_atom("appears(v2)")));
  EXPECT_TRUE(at(2).count(parse_ground_atom("disappears(v1)")));
  EXPECT_TRUE(at(3).count(parse_ground_atom("disappears(v2)")));
  // temp heads do not survive into later slots
  EXPECT_FALSE(at(3).count(parse_ground_atom("appears(v2)")));
  EXPECT_FALSE(profile_output(LTuple{ldsr, in, {}}, 3, Profile::Bound).stream[1].count(parse_ground_atom("appears(v2)")));
}

TEST(Expressibility, TrainRho7Bound) {
  auto ldsr = parse_ldsr(read_fixture("train.ldsr"));
  auto lars = rho7(ldsr).program;
  const Stream in = stream_of({{"train_pass"}, {}, {"train_pass"}, {}, {}, {"train_pass"}});
  for (std::size_t t = 0; t <= in.n(); ++t) {
    EXPECT_TRUE(check_expressibility(LTuple{ldsr, in, {}}, LTuple{lars, in, {}}, t, Profile::Bound, true).equal);
  }
  // box rules keep deriving after t, which the full profile exposes
  EXPECT_FALSE(check_expressibility(LTuple{ldsr, in, {}}, LTuple{lars, in, {}}, 0, Profile::Full, true).equal);
  EXPECT_EQ(profile_output(LTuple{ldsr, in, {}}, 2, Profile::Atomic).stream[2], atoms("irregular train_pass"));
  EXPECT_EQ(profile_output(LTuple{ldsr, in, {}}, 5, Profile::Atomic).stream[5], atoms("train_pass"));
}

TEST(Expressibility, NonStrictFiltersAuxPredicates) {
  auto ldsr = parse_ldsr("#stream r/0.\np :- q in {0,1}.\n#temp q :- r.\n");
  auto lars = rho4(ldsr).program;
  const Stream in = stream_of({{"r"}, {}, {"r"}});
  auto strict = check_expressibility(LTuple{ldsr, in, {}}, LTuple{lars, in, {}}, 2, Profile::Bound, true);
  EXPECT_FALSE(strict.equal);
  ASSERT_TRUE(strict.first_diff);
  EXPECT_TRUE(strict.first_diff->only_right.count(parse_ground_atom("q__temp")));
  auto loose = check_expressibility(LTuple{ldsr, in, {}}, LTuple{lars, in, {}}, 2, Profile::Bound, false);
  EXPECT_TRUE(loose.equal);
  EXPECT_TRUE(loose.filtered);
}

// No LDSR program separates I from I' at tau, while P1 does.
TEST(Expressibility, P1HasNoLdsrCounterpart) {
  const std::vector<PredicateDecl> vocab{{"c", PredicateKind::StreamExtensional, 0},
                                         {"a", PredicateKind::Intensional, 0},
                                         {"p", PredicateKind::Intensional, 1}};
  for (std::size_t tau = 1; tau <= 3; ++tau) {
    auto pair = p1_pair(tau, 5);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto prog = gen_ldsr_program(vocab, seed * 10 + tau);
      auto mutator = [&](const Stream&, std::size_t) { return pair.without_c; };
      EXPECT_TRUE(prefix_independence(prog, pair.with_c, {}, tau, mutator).equal) << print_ldsr(prog);
    }
  }
}

// {{{1 prefix independence

TEST(PrefixIndependence, GeneratedCases) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto inst = gen_any_instance(Language::Ldsr, seed);
    const auto& p = std::get<LdsrProgram>(inst.program);
    std::set<std::string> stream_preds;
    for (const auto& [name, d] : p.signature.decls()) {
      if (d.kind == PredicateKind::StreamExtensional) stream_preds.insert(name);
    }
    const auto dom = inst.tuple().default_domain();
    std::vector<Constant> constants(dom.begin(), dom.end());
    const std::size_t t = seed % (inst.input.n() + 1);
    auto mutator = [&](const Stream& s, std::size_t at) { return mutate_after(s, at, stream_preds, constants, seed); };
    EXPECT_TRUE(prefix_independence(p, inst.input, inst.background, t, mutator).equal) << print_ldsr(p);
  }
}

TEST(PrefixIndependence, MutatorMustKeepThePrefix) {
  auto p = parse_ldsr(read_fixture("train.ldsr"));
  const Stream in = stream_of({{"train_pass"}, {}, {}});
  auto early = [](const Stream& s, std::size_t) {
    Stream out = s;
    out[0].clear();
    return out;
  };
  EXPECT_THROW(prefix_independence(p, in, {}, 1, early), ValidationError);
  auto longer = [](const Stream&, std::size_t) { return Stream(5); };
  EXPECT_THROW(prefix_independence(p, in, {}, 1, longer), ValidationError);
}

// {{{1 generation

TEST(Generation, DeterministicPerSeed) {
  for (int f = 1; f <= 7; ++f) {
    auto a = gen_fragment_instance(static_cast<Fragment>(f), 42);
    auto b = gen_fragment_instance(static_cast<Fragment>(f), 42);
    EXPECT_EQ(a.input, b.input);
    EXPECT_EQ(a.attempts, b.attempts);
    EXPECT_EQ(std::visit([](const auto& p) { return p.predicates(); }, a.program),
              std::visit([](const auto& p) { return p.predicates(); }, b.program));
  }
}

TEST(Generation, InstancesLieInTheirFragment) {
  const GenBounds bounds;
  for (int f = 1; f <= 7; ++f) {
    const auto frag = static_cast<Fragment>(f);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      auto inst = gen_fragment_instance(frag, seed, bounds);
      EXPECT_LE(inst.input.n(), bounds.max_n);
      const auto verdict = std::visit(
          [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LarsProgram>) {
              return classify_lars_fragments(p);
            } else {
              return classify_ldsr_fragments(p);
            }
          },
          inst.program);
      EXPECT_TRUE(verdict.member(frag)) << to_string(frag) << " seed " << seed;
      EXPECT_TRUE(inclusions_hold(verdict));
    }
  }
}

TEST(Generation, FixedVocabulary) {
  const std::vector<PredicateDecl> vocab{{"c", PredicateKind::StreamExtensional, 0},
                                         {"a", PredicateKind::Intensional, 0}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto p = gen_ldsr_program(vocab, seed);
    for (const auto& pred : p.predicates()) EXPECT_TRUE(pred == "a" || pred == "c") << pred;
  }
}

TEST(Generation, MutateAfterKeepsPrefix) {
  const Stream in = stream_of({{"s(c1)"}, {}, {"s(c2)"}, {}});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto out = mutate_after(in, 1, {"s"}, {Constant::symbol("c1"), Constant::symbol("c2")}, seed);
    EXPECT_EQ(out.n(), in.n());
    EXPECT_EQ(out[0], in[0]);
    EXPECT_EQ(out[1], in[1]);
  }
}

// {{{1 campaigns

TEST(Campaign, ConfigOutsideTheTables) {
  CampaignConfig c;
  c.fragment = Fragment::F4;
  c.rho = 4;
  c.profile = Profile::Full;
  c.strict = false;
  EXPECT_TRUE(campaign_config_error(c));
  EXPECT_THROW(differential_campaign(c), ValidationError);
  c.profile = Profile::Bound;
  EXPECT_FALSE(campaign_config_error(c));
  c.strict = true;
  EXPECT_TRUE(campaign_config_error(c));
  c.strict = false;
  c.fragment = Fragment::F1;
  EXPECT_TRUE(campaign_config_error(c));
}

TEST(Campaign, SmallRunsPass) {
  const struct {
    Fragment f;
    Profile phi;
    bool strict;
  } rows[] = {{Fragment::F1, Profile::Atomic, true}, {Fragment::F2, Profile::Bound, true},
              {Fragment::F3, Profile::Full, true},   {Fragment::F4, Profile::Bound, false},
              {Fragment::F5, Profile::Full, false},  {Fragment::F6, Profile::Full, true},
              {Fragment::F7, Profile::Bound, true}};
  for (int k = 1; k <= 7; ++k) {
    CampaignConfig c;
    c.fragment = rows[k - 1].f;
    c.rho = k;
    c.profile = rows[k - 1].phi;
    c.strict = rows[k - 1].strict;
    c.trials = 20;
    c.seed = 99;
    auto report = differential_campaign(c);
    EXPECT_TRUE(report.ok()) << "rho" << k << ": " << report.passes << "/" << report.trials.size();
    EXPECT_EQ(report.trials.size(), 20u);
    for (std::size_t i = 1; i < report.trials.size(); ++i) {
      EXPECT_LT(report.trials[i - 1].seed, report.trials[i].seed);
    }
  }
}

TEST(Campaign, ReplayMatchesReport) {
  CampaignConfig c;
  c.fragment = Fragment::F7;
  c.rho = 7;
  c.profile = Profile::Bound;
  c.trials = 5;
  auto report = differential_campaign(c);
  for (const auto& t : report.trials) {
    auto again = run_trial(c, t.seed);
    EXPECT_EQ(again.passed, t.passed);
    EXPECT_EQ(again.n, t.n);
  }
}

}  // namespace
}  // namespace sreason
