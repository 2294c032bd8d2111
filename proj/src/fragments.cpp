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

#include "sreason/fragments.hpp"

#include <algorithm>
#include <sstream>

#include "graph_util.hpp"

namespace sreason {

std::string to_string(Fragment f) { return "F" + std::to_string(static_cast<int>(f)); }

Fragment parse_fragment(const std::string& text) {
  std::string digits = text;
  if (!digits.empty() && (digits[0] == 'F' || digits[0] == 'f')) digits.erase(0, 1);
  if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '7') {
    return static_cast<Fragment>(digits[0] - '0');
  }
  throw ValidationError("unknown fragment '" + text + "' (expected F1..F7)");
}

bool is_lars_fragment(Fragment f) { return static_cast<int>(f) <= 3; }

// {{{1 shapes

namespace {

std::optional<Beta> match_positive(const FormulaPtr& f) {
  Beta b;
  if (f->op == FormulaOp::Atom) {
    b.atom = f->atom;
    return b;
  }
  if (f->op == FormulaOp::Window && f->width >= 0) {
    const auto& k = f->kids[0];
    if ((k->op == FormulaOp::Diamond || k->op == FormulaOp::Box) &&
        k->kids[0]->op == FormulaOp::Atom) {
      b.kind = k->op == FormulaOp::Diamond ? BetaKind::WindowDiamond : BetaKind::WindowBox;
      b.window = f->width;
      b.atom = k->kids[0]->atom;
      return b;
    }
    return std::nullopt;
  }
  if (f->op == FormulaOp::And && f->kids.size() == 2) {
    // ⊞⁰@_T⊤ paired with @_{T−K}p, in either order
    auto anchor_var = [](const FormulaPtr& g) -> std::optional<std::string> {
      if (g->op != FormulaOp::Window || g->width != 0) return std::nullopt;
      const auto& at = g->kids[0];
      if (at->op != FormulaOp::At || !at->time.is_variable() || at->time.offset != 0) return std::nullopt;
      if (at->kids[0]->op != FormulaOp::True) return std::nullopt;
      return at->time.var;
    };
    for (int first = 0; first < 2; ++first) {
      auto var = anchor_var(f->kids[first]);
      const auto& other = f->kids[1 - first];
      if (!var || other->op != FormulaOp::At) continue;
      if (!other->time.is_variable() || other->time.var != *var || other->time.offset > 0) continue;
      if (other->kids[0]->op != FormulaOp::Atom) continue;
      b.kind = BetaKind::Offset;
      b.time_var = *var;
      b.offset = -other->time.offset;
      b.atom = other->kids[0]->atom;
      return b;
    }
  }
  return std::nullopt;
}

std::vector<FormulaPtr> premise_items(const FormulaPtr& prem) {
  if (prem->op == FormulaOp::True) return {};
  if (prem->op == FormulaOp::And && !match_positive(prem)) return prem->kids;
  return {prem};
}

}  // namespace

std::optional<Beta> match_beta(const FormulaPtr& f) {
  if (f->op == FormulaOp::Not) {
    auto b = match_positive(f->kids[0]);
    if (b) b->negative = true;
    return b;
  }
  return match_positive(f);
}

RuleShape classify_rule_shape(const LarsRule& rule, const Signature& signature) {
  RuleShape shape;
  auto fill = [&](const std::vector<FormulaPtr>& items) {
    for (const auto& item : items) {
      auto b = match_beta(item);
      if (!b) {
        shape.kind = ShapeKind::Other;
        shape.reason = "'" + item->str() + "' is not an admissible premise formula";
        shape.betas.clear();
        return false;
      }
      shape.betas.push_back(*b);
    }
    return true;
  };
  const auto& h = rule.head;
  if (h->op == FormulaOp::Box) {
    const auto& imp = h->kids[0];
    shape.head = imp->kids[1]->atom;
    if (!rule.body.empty()) {
      shape.reason = "box-implication head with a non-empty body";
      return shape;
    }
    if (!signature.is_intensional(shape.head.predicate)) {
      shape.reason = "consequent '" + shape.head.predicate + "' is not intensional";
      return shape;
    }
    shape.kind = ShapeKind::TypeI;
    fill(premise_items(imp->kids[0]));
    return shape;
  }
  if (h->op == FormulaOp::Atom) {
    shape.head = h->atom;
    if (!signature.is_intensional(shape.head.predicate)) {
      shape.reason = "head '" + shape.head.predicate + "' is not intensional";
      return shape;
    }
    shape.kind = ShapeKind::TypeII;
    fill(rule.body);
    return shape;
  }
  shape.head = rule.head_atom();
  shape.reason = "head '" + h->str() + "' is neither an atom nor a box-implication";
  return shape;
}

RuleShape classify_rule_shape(const LarsRule& rule) {
  Signature sig;
  sig.ensure(rule.head_atom().predicate, rule.head_atom().args.size(), PredicateKind::Intensional);
  return classify_rule_shape(rule, sig);
}

namespace {

std::vector<RuleShape> shapes_of(const LarsProgram& program) {
  std::vector<RuleShape> out;
  out.reserve(program.rules.size());
  for (const auto& r : program.rules) out.push_back(classify_rule_shape(r, program.signature));
  return out;
}

std::set<std::string> beta_predicates(const RuleShape& s) {
  std::set<std::string> out;
  for (const auto& b : s.betas) out.insert(b.atom.predicate);
  return out;
}

std::set<std::string> marked_from(const std::vector<RuleShape>& shapes) {
  std::set<std::string> type2_heads;
  for (const auto& s : shapes) {
    if (s.kind == ShapeKind::TypeII) type2_heads.insert(s.head.predicate);
  }
  std::set<std::string> out;
  for (const auto& s : shapes) {
    if (s.kind != ShapeKind::TypeI) continue;
    for (const auto& p : beta_predicates(s)) {
      if (type2_heads.count(p)) {
        out.insert(s.head.predicate);
        break;
      }
    }
  }
  return out;
}

DepGraph graph_from(const std::vector<RuleShape>& shapes) {
  DepGraph g;
  for (const auto& s : shapes) {
    if (s.kind == ShapeKind::Other) continue;
    g.nodes.insert(s.head.predicate);
    for (const auto& b : s.betas) {
      g.arcs.insert({b.atom.predicate, s.head.predicate,
                     b.negative ? ArcLabel::Negative : ArcLabel::Positive});
    }
  }
  return g;
}

std::vector<std::string> sorted(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

std::set<std::string> marked_predicates(const LarsProgram& program) {
  return marked_from(shapes_of(program));
}

DepGraph build_dep_graph(const LarsProgram& program) { return graph_from(shapes_of(program)); }

// {{{1 verdicts

FragmentVerdict classify_lars_fragments(const LarsProgram& program) {
  FragmentVerdict v;
  const auto shapes = shapes_of(program);
  const auto marked = marked_from(shapes);
  bool f1 = true;
  bool f2 = true;
  bool f3 = true;
  auto add = [&](Fragment fr, std::string cond, std::string msg, std::optional<std::size_t> rule,
                 std::vector<std::string> preds) {
    v.violations.push_back({fr, std::move(cond), std::move(msg), rule, std::move(preds)});
  };

  std::set<std::string> type1_premise;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& s = shapes[i];
    if (s.kind == ShapeKind::Other) {
      f1 = false;
      add(Fragment::F1, "i", "rule " + std::to_string(i + 1) + " is neither of type (I) nor (II): " +
                                 s.reason,
          i, {});
      continue;
    }
    std::set<std::string> hit;
    for (const auto& p : beta_predicates(s)) {
      if (marked.count(p)) hit.insert(p);
    }
    if (s.kind == ShapeKind::TypeI) {
      const auto preds = beta_predicates(s);
      type1_premise.insert(preds.begin(), preds.end());
    }
    if (!hit.empty()) {
      f1 = false;
      const bool t1 = s.kind == ShapeKind::TypeI;
      add(Fragment::F1, t1 ? "ii" : "iii",
          std::string(t1 ? "premise" : "body") + " of rule " + std::to_string(i + 1) +
              " uses marked predicate(s) " + join(sorted(hit), ", "),
          i, sorted(hit));
    }
  }

  detail::PredGraph pg;
  const auto graph = graph_from(shapes);
  for (const auto& n : graph.nodes) pg.nodes.insert(n);
  for (const auto& a : graph.arcs) pg.add(a.from, a.to, a.label == ArcLabel::Negative ? 1 : 0);
  auto strat = detail::stratify(pg);
  if (strat.bad_cycle) {
    f1 = false;
    add(Fragment::F1, "iv", "dependency cycle through a negative arc: " + join(*strat.bad_cycle, " -> "),
        std::nullopt, *strat.bad_cycle);
  }

  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const auto& s = shapes[i];
    if (s.kind == ShapeKind::TypeII && type1_premise.count(s.head.predicate)) {
      f2 = false;
      add(Fragment::F2, "i",
          "head '" + s.head.predicate + "' of type (II) rule " + std::to_string(i + 1) +
              " occurs in the premise of a type (I) rule",
          i, {s.head.predicate});
    }
    if (s.kind == ShapeKind::TypeI) {
      f3 = false;
      add(Fragment::F3, "i", "rule " + std::to_string(i + 1) + " is of type (I)", i,
          {s.head.predicate});
    }
  }
  if (f1) v.memberships.insert(Fragment::F1);
  if (f1 && f2) v.memberships.insert(Fragment::F2);
  if (f1 && f2 && f3) v.memberships.insert(Fragment::F3);
  return v;
}

FragmentVerdict classify_ldsr_fragments(const LdsrProgram& program) {
  FragmentVerdict v;
  bool f4 = true;
  bool f5 = true;
  bool count_free = true;
  std::set<std::string> temp_heads = program.head_predicates(RuleForm::Temp);
  std::set<std::string> temp_body;
  std::vector<std::size_t> temp_rules;
  auto add = [&](Fragment fr, std::string cond, std::string msg, std::optional<std::size_t> rule,
                 std::vector<std::string> preds) {
    v.violations.push_back({fr, std::move(cond), std::move(msg), rule, std::move(preds)});
  };
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    const auto& r = program.rules[i];
    const std::string rn = "rule " + std::to_string(i + 1);
    if (!program.signature.is_intensional(r.head.predicate)) {
      f4 = false;
      add(Fragment::F4, "i", "head '" + r.head.predicate + "' of " + rn + " is not intensional", i,
          {r.head.predicate});
    }
    if (!r.is_temp()) {
      f5 = false;
      add(Fragment::F5, "i", rn + " is not a #temp rule", i, {r.head.predicate});
    }
    for (const auto& l : r.body) {
      if (l.atom.has_count_variable()) {
        count_free = false;
        add(Fragment::F6, "i", rn + " has count-variable literal '" + l.str() + "'", i,
            {l.atom.atom.predicate});
        add(Fragment::F7, "ii", rn + " has count-variable literal '" + l.str() + "'", i,
            {l.atom.atom.predicate});
      }
      if (r.is_temp() && temp_heads.count(l.atom.atom.predicate)) {
        temp_body.insert(l.atom.atom.predicate);
        temp_rules.push_back(i);
      }
    }
  }
  const bool f7i = temp_body.empty();
  if (!f7i) {
    add(Fragment::F7, "i",
        "predicate(s) " + join(sorted(temp_body), ", ") +
            " occur both in a #temp head and in a #temp body",
        temp_rules.front(), sorted(temp_body));
  }
  if (f4) v.memberships.insert(Fragment::F4);
  if (f4 && f5) v.memberships.insert(Fragment::F5);
  if (f4 && f5 && count_free) v.memberships.insert(Fragment::F6);
  if (f4 && f7i && count_free) v.memberships.insert(Fragment::F7);
  return v;
}

bool inclusions_hold(const FragmentVerdict& v) {
  auto implies = [&](Fragment a, Fragment b) { return !v.member(a) || v.member(b); };
  return implies(Fragment::F3, Fragment::F2) && implies(Fragment::F2, Fragment::F1) &&
         implies(Fragment::F6, Fragment::F5) && implies(Fragment::F5, Fragment::F4) &&
         implies(Fragment::F7, Fragment::F4);
}

std::string format_verdict(const FragmentVerdict& verdict, bool lars) {
  std::ostringstream out;
  const int lo = lars ? 1 : 4;
  const int hi = lars ? 3 : 7;
  for (int k = lo; k <= hi; ++k) {
    const auto f = static_cast<Fragment>(k);
    out << to_string(f) << ": " << (verdict.member(f) ? "yes" : "no") << '\n';
    for (const auto& viol : verdict.violations) {
      if (viol.fragment != f) continue;
      out << "  (" << viol.condition << ") " << viol.message << '\n';
    }
  }
  return out.str();
}

}  // namespace sreason
