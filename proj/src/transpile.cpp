// Copyright 2026 The sreason Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sreason/transpile.hpp"

#include <algorithm>
#include <map>

namespace sreason {

namespace {

// {{{1 formula helpers with constant folding

bool is_top(const FormulaPtr& f) { return f->op == FormulaOp::True; }
bool is_bottom(const FormulaPtr& f) { return f->op == FormulaOp::Not && is_top(f->kids[0]); }

FormulaPtr and_of(const std::vector<FormulaPtr>& fs) {
  std::vector<FormulaPtr> keep;
  for (const auto& f : fs) {
    if (is_bottom(f)) return lf::bottom();
    if (!is_top(f)) keep.push_back(f);
  }
  return lf::conj(std::move(keep));
}

FormulaPtr or_of(const std::vector<FormulaPtr>& fs) {
  std::vector<FormulaPtr> keep;
  for (const auto& f : fs) {
    if (is_top(f)) return lf::top();
    if (!is_bottom(f)) keep.push_back(f);
  }
  return lf::disj(std::move(keep));
}

FormulaPtr not_of(const FormulaPtr& f) {
  if (is_top(f)) return lf::bottom();
  if (is_bottom(f)) return lf::top();
  return lf::neg(f);
}

Term time_minus(const std::string& T, std::int64_t d) { return Term::variable(T, -d); }

/// Ti = T−d1 ∨ ... ∨ Ti = T−dm
FormulaPtr offset_choice(const std::string& Ti, const std::string& T, const std::set<std::int64_t>& D) {
  std::vector<FormulaPtr> eqs;
  for (auto d : D) eqs.push_back(lf::eq(Term::variable(Ti), time_minus(T, d)));
  return lf::disj(std::move(eqs));
}

/// c pairwise distinct witnesses of `a` at offsets in D. Returns the
/// witness variables through `out`.
FormulaPtr witnesses(const Atom& a, std::int64_t c, const std::set<std::int64_t>& D, const std::string& T,
                     TimeVars& vars, std::vector<std::string>& out) {
  std::vector<FormulaPtr> parts;
  for (std::int64_t i = 0; i < c; ++i) {
    const std::string Ti = vars.next();
    parts.push_back(lf::conj({lf::at(Term::variable(Ti), lf::atom(a)), offset_choice(Ti, T, D)}));
    out.push_back(Ti);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      parts.push_back(lf::ne(Term::variable(out[i]), Term::variable(out[j])));
    }
  }
  return lf::conj(std::move(parts));
}

std::int64_t constant_bound(const StreamingAtom& alpha) {
  if (alpha.kind == StreamingKind::AlwaysIn) return 1;
  if (!alpha.bound.value.is_number()) {
    throw ValidationError("streaming atom with a non-numeric bound: " + alpha.str());
  }
  return alpha.bound.value.as_number();
}

StreamingAtom with(const StreamingAtom& alpha, std::int64_t bound, std::set<std::int64_t> D) {
  StreamingAtom out = alpha;
  out.offsets = std::move(D);
  if (alpha.kind != StreamingKind::AlwaysIn) out.bound = Term::number(bound);
  return out;
}

/// σ that accepts an empty offset set: at least/count reduce to their
/// truth value on an empty observation, always in to ⊤.
FormulaPtr sigma_or_const(const StreamingAtom& alpha, const std::string& T, TimeVars& vars) {
  if (!alpha.offsets.empty()) return sigma(alpha, T, vars);
  switch (alpha.kind) {
    case StreamingKind::AtLeast: return constant_bound(alpha) <= 0 ? lf::top() : lf::bottom();
    case StreamingKind::AlwaysIn: return lf::top();
    case StreamingKind::Count: return constant_bound(alpha) == 0 ? lf::top() : lf::bottom();
  }
  return lf::bottom();
}

/// α with offset 0 read from `now` and the other offsets through σ.
FormulaPtr split_now(const StreamingAtom& alpha, const FormulaPtr& now, const std::string& T, TimeVars& vars) {
  std::set<std::int64_t> rest = alpha.offsets;
  rest.erase(0);
  if (alpha.kind == StreamingKind::AlwaysIn) {
    return and_of({now, sigma_or_const(with(alpha, 1, rest), T, vars)});
  }
  const std::int64_t c = constant_bound(alpha);
  auto part = [&](std::int64_t k) {
    if (k < 0 || k > static_cast<std::int64_t>(rest.size())) return lf::bottom();
    return sigma_or_const(with(alpha, k, rest), T, vars);
  };
  if (alpha.kind == StreamingKind::AtLeast) {
    if (c <= 0) return lf::top();
    return or_of({and_of({now, part(c - 1)}), part(c)});
  }
  return or_of({and_of({now, part(c - 1)}), and_of({not_of(now), part(c)})});
}

bool heads_form(const LdsrProgram& p, const std::string& pred, RuleForm form) {
  for (const auto& r : p.rules) {
    if (r.form == form && r.head.predicate == pred) return true;
  }
  return false;
}

Atom rename(const Atom& a, const std::map<std::string, std::string>& m) {
  Atom out = a;
  for (auto& t : out.args) {
    if (t.is_variable()) t.var = m.at(t.var);
  }
  return out;
}

StreamingLiteral rename(const StreamingLiteral& l, const std::map<std::string, std::string>& m) {
  StreamingLiteral out = l;
  out.atom.atom = rename(l.atom.atom, m);
  if (out.atom.bound.is_variable()) out.atom.bound.var = m.at(out.atom.bound.var);
  return out;
}

std::string violations_text(const FragmentVerdict& v, Fragment target) {
  std::set<Fragment> chain{target};
  switch (target) {
    case Fragment::F2: chain.insert(Fragment::F1); break;
    case Fragment::F3: chain.insert({Fragment::F1, Fragment::F2}); break;
    case Fragment::F5: chain.insert(Fragment::F4); break;
    case Fragment::F6: chain.insert({Fragment::F4, Fragment::F5}); break;
    case Fragment::F7: chain.insert(Fragment::F4); break;
    default: break;
  }
  std::string out;
  for (const auto& x : v.violations) {
    if (chain.count(x.fragment) == 0) continue;
    out += "\n  " + to_string(x.fragment) + " (" + x.condition + "): " + x.message;
  }
  return out;
}

void require(const FragmentVerdict& v, Fragment target) {
  if (v.member(target)) return;
  throw UnsupportedProgram("program is not in " + to_string(target) + ":" + violations_text(v, target));
}

// {{{1 LARS_D -> LDSR

LdsrTranslation lars_to_ldsr(const LarsProgram& program, Fragment target) {
  require(classify_lars_fragments(program), target);
  LdsrTranslation out;
  out.program.signature = program.signature;
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto shape = classify_rule_shape(program.rules[i], program.signature);
    LdsrRule r;
    r.form = shape.kind == ShapeKind::TypeI ? RuleForm::Permanent : RuleForm::Temp;
    r.head = shape.head;
    const std::vector<FormulaPtr>* items = &program.rules[i].body;
    std::vector<FormulaPtr> prem;
    if (shape.kind == ShapeKind::TypeI) {
      // re-split the premise into the conjuncts the shape was built from
      const auto& p = program.rules[i].head->kids[0]->kids[0];
      if (p->op == FormulaOp::True) {
      } else if (p->op == FormulaOp::And && !match_beta(p)) {
        prem = p->kids;
      } else {
        prem = {p};
      }
      items = &prem;
    }
    for (const auto& b : *items) r.body.push_back(f_translate(b));
    check_safety(r);
    out.provenance.push_back({out.program.rules.size(), i, "f"});
    out.program.rules.push_back(std::move(r));
  }
  return out;
}

// {{{1 LDSR -> LARS_D

LarsRule box_rule(const Atom& head, std::vector<FormulaPtr> items) {
  LarsRule r;
  r.head = lf::box(lf::implies(and_of(items), lf::atom(head)));
  return r;
}

void check_reserved(const LdsrProgram& program, const std::set<std::string>& aux) {
  for (const auto& p : program.signature.decls()) {
    if (aux.count(p.first)) {
      throw ValidationError("predicate '" + p.first + "' collides with a generated auxiliary predicate");
    }
  }
}

std::vector<StreamingAtom> count_variable_atoms(const LdsrProgram& program) {
  std::vector<StreamingAtom> out;
  for (const auto& r : program.rules) {
    for (const auto& l : r.body) {
      if (l.atom.has_count_variable() &&
          std::find(out.begin(), out.end(), l.atom) == out.end()) {
        out.push_back(l.atom);
      }
    }
  }
  return out;
}

struct Builder {
  const LdsrProgram& source;
  LarsTranslation out;
  std::set<std::string> seen_rules;

  void add(LarsRule r, std::optional<std::size_t> src, const std::string& helper) {
    if (!seen_rules.insert(r.str()).second) return;
    out.provenance.push_back({out.program.rules.size(), src, helper});
    out.program.rules.push_back(std::move(r));
  }

  void add_c_alpha(const AtLeastRenderer& render) {
    for (const auto& alpha : count_variable_atoms(source)) {
      out.aux_predicates.insert(present_predicate(alpha));
      out.aux_predicates.insert(count_predicate(alpha));
      for (auto& r : c_alpha_rules(alpha, render)) add(std::move(r), std::nullopt, "C_alpha");
    }
  }

  LarsTranslation finish() {
    check_reserved(source, out.aux_predicates);
    out.program.signature = source.signature;
    for (const auto& r : out.program.rules) {
      const auto& h = r.head_atom();
      out.program.signature.ensure(h.predicate, h.args.size(), PredicateKind::Intensional);
    }
    return std::move(out);
  }
};

TimeVars vars_for(const LdsrRule& r) { return TimeVars(r.variables()); }

}  // namespace

// {{{1 public: LARS_D -> LDSR

StreamingLiteral f_translate(const FormulaPtr& beta) {
  auto b = match_beta(beta);
  if (!b) throw UnsupportedProgram("formula '" + beta->str() + "' is outside the translatable set");
  StreamingLiteral l;
  l.negative = b->negative;
  std::set<std::int64_t> upto;
  for (std::int64_t d = 0; d <= b->window; ++d) upto.insert(d);
  switch (b->kind) {
    case BetaKind::Atom: l.atom = StreamingAtom::bare(b->atom); break;
    case BetaKind::WindowDiamond: l.atom = StreamingAtom::at_least(b->atom, 1, upto); break;
    case BetaKind::WindowBox: l.atom = StreamingAtom::always_in(b->atom, upto); break;
    case BetaKind::Offset: l.atom = StreamingAtom::at_least(b->atom, 1, {b->offset}); break;
  }
  return l;
}

LdsrTranslation rho1(const LarsProgram& program) { return lars_to_ldsr(program, Fragment::F1); }
LdsrTranslation rho2(const LarsProgram& program) { return lars_to_ldsr(program, Fragment::F2); }
LdsrTranslation rho3(const LarsProgram& program) { return lars_to_ldsr(program, Fragment::F3); }

// {{{1 public: helpers of LDSR -> LARS_D

TimeVars::TimeVars(std::set<std::string> reserved) : names_(std::move(reserved)) {
  reference_ = names_.take("T");
}

std::string TimeVars::next() {
  for (;;) {
    std::string name = reference_ + std::to_string(++counter_);
    if (names_.take(name) == name) return name;
  }
}

std::string TimeVars::data(const std::string& base) { return names_.take(base); }

std::string temp_predicate(const std::string& predicate) { return predicate + kTempSuffix; }

namespace {
std::string aux_shape(const StreamingAtom& alpha) {
  return alpha.atom.predicate + "_" + std::to_string(alpha.atom.args.size()) + "_" + std::to_string(alpha.offsets.size());
}

Atom aux_atom(const std::string& pred, const StreamingAtom& alpha, Term last) {
  Atom a;
  a.predicate = pred;
  a.args.push_back(Term::symbol(alpha.atom.predicate));
  for (const auto& t : alpha.atom.args) a.args.push_back(t);
  for (auto d : alpha.offsets) a.args.push_back(Term::number(d));
  a.args.push_back(std::move(last));
  return a;
}
}  // namespace

std::string count_predicate(const StreamingAtom& alpha) {
  return std::string(kAuxPrefix) + "count_" + aux_shape(alpha);
}

std::string present_predicate(const StreamingAtom& alpha) {
  return std::string(kAuxPrefix) + "present_" + aux_shape(alpha);
}

FormulaPtr sigma(const StreamingAtom& alpha, const std::string& T, TimeVars& vars) {
  if (alpha.offsets.empty()) throw ValidationError("streaming atom with an empty offset set: " + alpha.str());
  const Atom& a = alpha.atom;
  std::vector<std::string> ws;
  switch (alpha.kind) {
    case StreamingKind::AtLeast: {
      const auto c = constant_bound(alpha);
      if (c <= 0) return lf::top();
      return witnesses(a, c, alpha.offsets, T, vars, ws);
    }
    case StreamingKind::AlwaysIn: {
      // offsets before the stream start are not observed
      std::vector<FormulaPtr> parts;
      for (auto d : alpha.offsets) {
        const std::string Ti = vars.next();
        auto hit = lf::conj({lf::at(Term::variable(Ti), lf::atom(a)), lf::eq(Term::variable(Ti), time_minus(T, d))});
        if (d == 0) {
          parts.push_back(hit);
        } else {
          parts.push_back(lf::disj({hit, lf::neg(lf::at(time_minus(T, d), lf::top()))}));
        }
      }
      return lf::conj(std::move(parts));
    }
    case StreamingKind::Count: {
      if (alpha.bound.is_variable()) {
        return lf::atom(aux_atom(count_predicate(alpha), alpha, alpha.bound));
      }
      const auto c = constant_bound(alpha);
      if (c < 0) return lf::bottom();
      FormulaPtr some = c == 0 ? lf::top() : witnesses(a, c, alpha.offsets, T, vars, ws);
      const std::string extra = vars.next();
      std::vector<FormulaPtr> more{lf::at(Term::variable(extra), lf::atom(a))};
      for (const auto& w : ws) more.push_back(lf::ne(Term::variable(extra), Term::variable(w)));
      more.push_back(offset_choice(extra, T, alpha.offsets));
      return and_of({some, lf::neg(lf::conj(std::move(more)))});
    }
  }
  return lf::bottom();
}

std::vector<LarsRule> c_alpha_rules(const StreamingAtom& alpha, const AtLeastRenderer& at_least) {
  if (!alpha.has_count_variable()) throw ValidationError("not a count-variable atom: " + alpha.str());
  std::set<std::string> reserved;
  for (const auto& t : alpha.atom.args) {
    if (t.is_variable()) reserved.insert(t.var);
  }
  const auto m = static_cast<std::int64_t>(alpha.offsets.size());
  const std::string present = present_predicate(alpha);
  std::vector<LarsRule> out;
  for (std::int64_t c = 1; c <= m; ++c) {
    TimeVars vars(reserved);
    const std::string T = vars.reference();
    auto target = StreamingAtom::at_least(alpha.atom, c, alpha.offsets);
    auto body = at_least ? at_least(target, T, vars) : sigma(target, T, vars);
    out.push_back(box_rule(aux_atom(present, alpha, Term::number(c)), {lf::now_anchor(T), body}));
  }
  TimeVars vars(reserved);
  const std::string T = vars.reference();
  const std::string C = vars.data("C");
  out.push_back(box_rule(aux_atom(count_predicate(alpha), alpha, Term::variable(C)),
                         {lf::now_anchor(T), lf::atom(aux_atom(present, alpha, Term::variable(C))),
                          lf::neg(lf::atom(aux_atom(present, alpha, Term::variable(C, 1))))}));
  return out;
}

FormulaPtr gprime_translate(const StreamingLiteral& l, const std::string& T, TimeVars& vars) {
  auto f = sigma(l.atom, T, vars);
  return l.negative ? not_of(f) : f;
}

namespace {

/// g with offset 0 of #temp heads read from `now(a)`.
FormulaPtr g_with(const StreamingLiteral& l, const LdsrProgram& program, const std::string& T, TimeVars& vars,
                  const std::function<FormulaPtr(const Atom&)>& now) {
  const auto& alpha = l.atom;
  FormulaPtr f;
  if (!alpha.has_count_variable() && alpha.offsets.count(0) &&
      heads_form(program, alpha.atom.predicate, RuleForm::Temp)) {
    f = split_now(alpha, now(alpha.atom), T, vars);
  } else {
    f = sigma(alpha, T, vars);
  }
  return l.negative ? not_of(f) : f;
}

FormulaPtr temp_now(const LdsrProgram& program, const Atom& a) {
  Atom t = a;
  t.predicate = temp_predicate(a.predicate);
  if (heads_form(program, a.predicate, RuleForm::Permanent)) return lf::disj({lf::atom(a), lf::atom(t)});
  return lf::atom(t);
}

}  // namespace

FormulaPtr g_translate(const StreamingLiteral& l, const LdsrProgram& program, const std::string& T,
                       TimeVars& vars) {
  return g_with(l, program, T, vars, [&](const Atom& a) { return temp_now(program, a); });
}

FormulaPtr d_P(const Atom& atom, const LdsrProgram& program, const std::string& T, TimeVars& vars) {
  std::vector<FormulaPtr> alts{sigma(StreamingAtom::bare(atom), T, vars)};
  for (const auto& r : program.rules) {
    if (!r.is_temp() || r.head.predicate != atom.predicate) continue;
    std::map<std::string, std::string> m;
    for (const auto& v : r.variables()) m[v] = vars.data(v);
    std::vector<FormulaPtr> parts;
    for (const auto& l : r.body) parts.push_back(gprime_translate(rename(l, m), T, vars));
    const Atom head = rename(r.head, m);
    for (std::size_t i = 0; i < atom.args.size(); ++i) parts.push_back(lf::eq(atom.args[i], head.args[i]));
    alts.push_back(and_of(parts));
  }
  return or_of(alts);
}

FormulaPtr gdoubleprime_translate(const StreamingLiteral& l, const LdsrProgram& program, const std::string& T,
                                  TimeVars& vars) {
  return g_with(l, program, T, vars, [&](const Atom& a) { return d_P(a, program, T, vars); });
}

// {{{1 public: ρ4..ρ7

LarsTranslation rho4(const LdsrProgram& program) {
  require(classify_ldsr_fragments(program), Fragment::F4);
  Builder b{program, {}, {}};
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    auto vars = vars_for(r);
    const std::string T = vars.reference();
    std::vector<FormulaPtr> items{lf::now_anchor(T)};
    for (const auto& l : r.body) items.push_back(g_translate(l, program, T, vars));
    if (!r.is_temp()) {
      b.add(box_rule(r.head, items), i, "g");
      continue;
    }
    LarsRule rule;
    rule.head = lf::atom(r.head);
    rule.body = items;
    b.add(std::move(rule), i, "g");
    Atom temp = r.head;
    temp.predicate = temp_predicate(r.head.predicate);
    b.out.aux_predicates.insert(temp.predicate);
    b.add(box_rule(temp, items), i, "g");
  }
  b.add_c_alpha([&](const StreamingAtom& a, const std::string& T, TimeVars& vars) {
    return g_translate(StreamingLiteral{false, a}, program, T, vars);
  });
  return b.finish();
}

namespace {
LarsTranslation temp_only(const LdsrProgram& program, Fragment target) {
  require(classify_ldsr_fragments(program), target);
  Builder b{program, {}, {}};
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    auto vars = vars_for(r);
    const std::string T = vars.reference();
    LarsRule rule;
    rule.head = lf::atom(r.head);
    rule.body.push_back(lf::now_anchor(T));
    for (const auto& l : r.body) rule.body.push_back(gprime_translate(l, T, vars));
    b.add(std::move(rule), i, "g'");
  }
  b.add_c_alpha({});
  return b.finish();
}
}  // namespace

LarsTranslation rho5(const LdsrProgram& program) { return temp_only(program, Fragment::F5); }
LarsTranslation rho6(const LdsrProgram& program) { return temp_only(program, Fragment::F6); }

LarsTranslation rho7(const LdsrProgram& program) {
  require(classify_ldsr_fragments(program), Fragment::F7);
  Builder b{program, {}, {}};
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    auto vars = vars_for(r);
    const std::string T = vars.reference();
    std::vector<FormulaPtr> items{lf::now_anchor(T)};
    if (r.is_temp()) {
      for (const auto& l : r.body) items.push_back(gprime_translate(l, T, vars));
      LarsRule rule;
      rule.head = lf::atom(r.head);
      rule.body = std::move(items);
      b.add(std::move(rule), i, "g'");
    } else {
      for (const auto& l : r.body) items.push_back(gdoubleprime_translate(l, program, T, vars));
      b.add(box_rule(r.head, items), i, "g''");
    }
  }
  return b.finish();
}

Fragment rho_fragment(int rho) {
  if (rho < 1 || rho > 7) throw ValidationError("unknown translation rho" + std::to_string(rho));
  return static_cast<Fragment>(rho);
}

}  // namespace sreason
