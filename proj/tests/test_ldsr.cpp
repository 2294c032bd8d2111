#include <gtest/gtest.h>

#include "sreason/harness.hpp"
#include "sreason/ldsr.hpp"
#include "test_util.hpp"

namespace sreason {
namespace {

using testing::read_fixture;
using testing::stream_of;

GroundAtom ga(const std::string& text) { return parse_ground_atom(text); }

StreamingLiteral lit(const std::string& rule_body) {
  auto p = parse_ldsr("h :- " + rule_body + ".");
  return p.rules.at(0).body.at(0);
}

// {{{1 syntax

TEST(LdsrParse, FormsAndKinds) {
  auto p = parse_ldsr(read_fixture("train.ldsr") + "#temp late(X) :- delay(X) count 2 in [3], not ok(X).\n");
  ASSERT_EQ(p.rules.size(), 2u);
  EXPECT_EQ(p.rules[0].form, RuleForm::Permanent);
  EXPECT_EQ(p.rules[1].form, RuleForm::Temp);
  EXPECT_EQ(p.rules[0].body[1].atom.kind, StreamingKind::AtLeast);
  EXPECT_EQ(p.rules[0].body[1].atom.offsets, (std::set<std::int64_t>{1, 2}));
  EXPECT_EQ(p.rules[1].body[0].atom.kind, StreamingKind::Count);
  EXPECT_EQ(p.rules[1].body[0].atom.offsets, (std::set<std::int64_t>{0, 1, 2, 3}));
  EXPECT_TRUE(p.rules[1].body[1].negative);
  EXPECT_EQ(p.signature.kind_of("train_pass"), PredicateKind::StreamExtensional);
  EXPECT_EQ(p.signature.kind_of("delay"), PredicateKind::StreamExtensional);
  EXPECT_TRUE(p.signature.is_intensional("late"));
  EXPECT_EQ(p.head_predicates(RuleForm::Temp), (std::set<std::string>{"late"}));
}

TEST(LdsrParse, RoundTrip) {
  const std::string text =
      "#background g/1.\n#intensional unused/0.\n"
      "p(X) :- s(X) always in {0,2}, g(X), not q(X) in [1].\n"
      "#temp q(X) :- s(X) count C in {1,2}, s(X) at least 2 in [3].\n";
  auto p = parse_ldsr(text);
  auto printed = print_ldsr(p);
  EXPECT_EQ(print_ldsr(parse_ldsr(printed)), printed);
  EXPECT_EQ(parse_ldsr(printed).rules, p.rules);
  EXPECT_EQ(p.signature.kind_of("g"), PredicateKind::BackgroundExtensional);
  EXPECT_TRUE(p.signature.find("unused"));
}

TEST(LdsrParse, Diagnostics) {
  try {
    parse_ldsr("p :- q.\nr :- s in {1,.\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_FALSE(e.diagnostics().empty());
    EXPECT_EQ(e.diagnostics()[0].line, 2);
  }
  EXPECT_THROW(parse_ldsr("p :- q in {}."), Error);
  EXPECT_THROW(parse_ldsr("p(X) :- q."), ParseError);
  EXPECT_THROW(parse_ldsr("p :- q, not r(X)."), ParseError);
  EXPECT_THROW(parse_ldsr("#stream p/0.\n#intensional p/0.\n"), ParseError);
  EXPECT_THROW(check_safety(LdsrRule{RuleForm::Permanent, Atom{"p", {Term::variable("X")}}, {}}), ValidationError);
}

TEST(LdsrParse, EmptyProgram) {
  auto p = parse_ldsr("% nothing\n");
  EXPECT_TRUE(p.rules.empty());
  EXPECT_EQ(print_ldsr(p), "");
}

// {{{1 stratification

TEST(LdsrStrata, HarmlessRecursionIsAllowed) {
  auto strata = check_stratified(parse_ldsr(read_fixture("p2.ldsr")));
  EXPECT_EQ(strata.size(), 1u);
}

TEST(LdsrStrata, NegativeCycle) {
  try {
    check_stratified(parse_ldsr("#stream s/0.\np :- s, not q.\nq :- s, not p.\n"));
    FAIL() << "expected StratificationError";
  } catch (const StratificationError& e) {
    EXPECT_EQ(std::set<std::string>(e.cycle().begin(), e.cycle().end()), (std::set<std::string>{"p", "q"}));
  }
  EXPECT_NO_THROW(check_stratified(parse_ldsr("#stream s/0.\np :- s, p in {1}.\n")));
  EXPECT_THROW(check_stratified(parse_ldsr("#stream s/0.\np :- s, p count 1 in {0}.\n")), StratificationError);
}

TEST(LdsrStrata, OrderFollowsDependencies) {
  auto p = parse_ldsr("#stream s/0.\nr :- not q.\nq :- p.\np :- s.\n");
  auto strata = check_stratified(p);
  std::vector<std::size_t> order;
  for (const auto& st : strata) order.insert(order.end(), st.begin(), st.end());
  auto pos = [&](std::size_t rule) { return std::find(order.begin(), order.end(), rule) - order.begin(); };
  EXPECT_LT(pos(1), pos(0));
}

// {{{1 grounding

TEST(LdsrGround, DomainAndCountVariables) {
  auto p = parse_ldsr("#stream s/1.\np(X, C) :- s(X) count C in {0,1,2}.\n");
  const Stream in = stream_of({{"s(a)"}});
  auto dom = default_domain(p, in, {ga("g(b)")});
  EXPECT_EQ(dom, (std::set<Constant>{Constant::symbol("a"), Constant::symbol("b"), Constant::number(1),
                                     Constant::number(2), Constant::number(3)}));
  auto g = ground_ldsr(p, dom);
  // X over 5 constants, C over 1..3 only
  EXPECT_EQ(g.rules.size(), 15u);
  for (const auto& r : g.rules) {
    const auto c = r.head.args[1].value;
    ASSERT_TRUE(c.is_number());
    EXPECT_GE(c.as_number(), 1);
    EXPECT_LE(c.as_number(), 3);
  }
}

// {{{1 entailment

TEST(LdsrEntails, ObservationClauses) {
  const Stream s = stream_of({{"a"}, {}, {"a"}});
  EXPECT_TRUE(entails(s, lit("a at least 2 in [2]")));
  EXPECT_FALSE(entails(s, lit("a at least 2 in [1]")));
  EXPECT_TRUE(entails(s, lit("a always in {0,2}")));
  EXPECT_FALSE(entails(s, lit("a always in [1]")));
  EXPECT_TRUE(entails(s, lit("a always in {0,5}")));
  EXPECT_TRUE(entails(s, lit("a count 2 in [2]")));
  EXPECT_FALSE(entails(s, lit("a count 1 in [2]")));
  EXPECT_TRUE(entails(s, lit("a count 1 in [1]")));
  EXPECT_TRUE(entails(s, lit("not a in {1}")));
  EXPECT_FALSE(entails(s, lit("a in {3}")));
  EXPECT_TRUE(entails(s, lit("a")));
}

// {{{1 answer streams

TEST(LdsrEval, Train) {
  auto p = parse_ldsr(read_fixture("train.ldsr"));
  const Stream in = stream_of({{"train_pass"}, {}, {"train_pass"}, {"train_pass"}, {}, {}, {"train_pass"}});
  auto res = eval_answer_stream(p, in, {});
  EXPECT_EQ(res.streaming_model, (AtomSet{ga("train_pass")}));
  EXPECT_TRUE(res.answer_stream.contains(2, ga("irregular")));
  EXPECT_TRUE(res.answer_stream.contains(3, ga("irregular")));
  EXPECT_FALSE(res.answer_stream.contains(6, ga("irregular")));
  EXPECT_FALSE(res.answer_stream.contains(0, ga("irregular")));
}

TEST(LdsrEval, TempAtomsLeaveEarlierSlots) {
  auto p = parse_ldsr("#stream s/0.\n#temp seen :- s.\nkept :- s.\n");
  const Stream in = stream_of({{"s"}, {"s"}});
  auto res = eval_answer_stream(p, in, {});
  EXPECT_EQ(res.answer_stream[0], (AtomSet{ga("kept"), ga("s")}));
  EXPECT_EQ(res.answer_stream[1], (AtomSet{ga("kept"), ga("s"), ga("seen")}));
  EXPECT_EQ(res.temp_trace[0], AtomSet{ga("seen")});
}

TEST(LdsrEval, BackgroundIsEverywhere) {
  auto p = parse_ldsr("#stream s/1.\n#background g/1.\nok(X) :- s(X), g(X).\n");
  auto res = eval_answer_stream(p, stream_of({{"s(1)", "s(2)"}, {"s(2)"}}), {ga("g(2)")});
  EXPECT_TRUE(res.answer_stream.contains(0, ga("g(2)")));
  EXPECT_EQ(res.streaming_model, (AtomSet{ga("g(2)"), ga("ok(2)"), ga("s(2)")}));
}

TEST(LdsrEval, InputKinds) {
  auto p = parse_ldsr("#stream s/0.\np :- s.\n");
  EXPECT_THROW(check_input_kinds(p.signature, stream_of({{"p"}}), {}), ValidationError);
  EXPECT_THROW(eval_answer_stream(p, stream_of({{"p"}}), {}), ValidationError);
}

TEST(LdsrEval, MatchesBruteForce) {
  GenBounds b;
  b.max_n = 3;
  b.max_constants = 2;
  b.max_predicates = 4;
  b.max_arity = 1;
  b.max_rules = 4;
  b.max_count = 2;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto inst = gen_any_instance(Language::Ldsr, seed, b);
    const auto& p = std::get<LdsrProgram>(inst.program);
    LdsrEvalResult slow;
    try {
      slow = brute_force_answer_stream(p, inst.input, inst.background);
    } catch (const InstanceTooLarge&) {
      continue;
    }
    auto fast = eval_answer_stream(p, inst.input, inst.background);
    EXPECT_EQ(fast.answer_stream, slow.answer_stream) << print_ldsr(p) << print_stream_text(inst.input);
    EXPECT_EQ(fast.streaming_model, slow.streaming_model);
    ++checked;
  }
  EXPECT_GE(checked, 100u);
}

TEST(LdsrEval, BruteForceGuard) {
  auto p = parse_ldsr("#stream s/1.\np(X) :- s(X).\n");
  Stream in;
  for (int i = 0; i < 20; ++i) in.insert(0, ga("s(" + std::to_string(i) + ")"));
  EXPECT_THROW(brute_force_answer_stream(p, in, {}, std::nullopt, 4), InstanceTooLarge);
}

}  // namespace
}  // namespace sreason
