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

#include <functional>
#include <map>

#include "graph_util.hpp"
#include "sreason/lars.hpp"
#include "sreason/lexer.hpp"
#include "syntax_util.hpp"

namespace sreason {

// {{{1 builders

namespace lf {

namespace {
std::shared_ptr<Formula> node(FormulaOp op) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  return f;
}
FormulaPtr unary(FormulaOp op, FormulaPtr kid) {
  auto f = node(op);
  f->kids.push_back(std::move(kid));
  return f;
}
}  // namespace

FormulaPtr atom(Atom a) {
  auto f = node(FormulaOp::Atom);
  f->atom = std::move(a);
  return f;
}

FormulaPtr top() { return node(FormulaOp::True); }
FormulaPtr bottom() { return neg(top()); }
FormulaPtr neg(FormulaPtr f) { return unary(FormulaOp::Not, std::move(f)); }

FormulaPtr conj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return fs.front();
  auto f = node(FormulaOp::And);
  f->kids = std::move(fs);
  return f;
}

FormulaPtr disj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return fs.front();
  auto f = node(FormulaOp::Or);
  f->kids = std::move(fs);
  return f;
}

FormulaPtr implies(FormulaPtr premise, FormulaPtr conclusion) {
  auto f = node(FormulaOp::Implies);
  f->kids = {std::move(premise), std::move(conclusion)};
  return f;
}

FormulaPtr diamond(FormulaPtr f) { return unary(FormulaOp::Diamond, std::move(f)); }
FormulaPtr box(FormulaPtr f) { return unary(FormulaOp::Box, std::move(f)); }
FormulaPtr reset(FormulaPtr f) { return unary(FormulaOp::Reset, std::move(f)); }

FormulaPtr at(Term t, FormulaPtr f) {
  auto n = node(FormulaOp::At);
  n->time = std::move(t);
  n->kids.push_back(std::move(f));
  return n;
}

FormulaPtr window(std::int64_t w, FormulaPtr f) {
  auto n = node(FormulaOp::Window);
  n->width = w;
  n->kids.push_back(std::move(f));
  return n;
}

FormulaPtr eq(Term a, Term b) {
  auto n = node(FormulaOp::Cmp);
  n->cmp = CmpOp::Eq;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

FormulaPtr ne(Term a, Term b) {
  auto n = node(FormulaOp::Cmp);
  n->cmp = CmpOp::Ne;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

FormulaPtr now_anchor(const std::string& var) { return window(0, at(Term::variable(var), top())); }

}  // namespace lf

// {{{1 structural helpers

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op || a->kids.size() != b->kids.size()) return false;
  switch (a->op) {
    case FormulaOp::Atom:
      if (!(a->atom == b->atom)) return false;
      break;
    case FormulaOp::At:
      if (!(a->time == b->time)) return false;
      break;
    case FormulaOp::Window:
      if (a->width != b->width) return false;
      break;
    case FormulaOp::Cmp:
      if (a->cmp != b->cmp || !(a->lhs == b->lhs) || !(a->rhs == b->rhs)) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a->kids.size(); ++i) {
    if (!same_formula(a->kids[i], b->kids[i])) return false;
  }
  return true;
}

namespace {

template <typename TermFn>
FormulaPtr map_terms(const FormulaPtr& f, const TermFn& fn) {
  auto n = std::make_shared<Formula>(*f);
  for (auto& t : n->atom.args) t = fn(t);
  if (f->op == FormulaOp::At) n->time = fn(f->time);
  if (f->op == FormulaOp::Cmp) {
    n->lhs = fn(f->lhs);
    n->rhs = fn(f->rhs);
  }
  for (auto& k : n->kids) k = map_terms(k, fn);
  return n;
}

void walk_terms(const FormulaPtr& f, const std::function<void(const Term&)>& fn) {
  for (const auto& t : f->atom.args) fn(t);
  if (f->op == FormulaOp::At) fn(f->time);
  if (f->op == FormulaOp::Cmp) {
    fn(f->lhs);
    fn(f->rhs);
  }
  for (const auto& k : f->kids) walk_terms(k, fn);
}

}  // namespace

FormulaPtr clone(const FormulaPtr& f) {
  return map_terms(f, [](const Term& t) { return t; });
}

FormulaPtr rename_variables(const FormulaPtr& f, const std::map<std::string, std::string>& rename) {
  return map_terms(f, [&](const Term& t) {
    if (!t.is_variable()) return t;
    auto it = rename.find(t.var);
    if (it == rename.end()) return t;
    return Term::variable(it->second, t.offset);
  });
}

std::set<std::string> formula_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  walk_terms(f, [&](const Term& t) {
    if (t.is_variable()) out.insert(t.var);
  });
  return out;
}

std::set<std::string> formula_predicates(const FormulaPtr& f) {
  std::set<std::string> out;
  std::function<void(const FormulaPtr&)> rec = [&](const FormulaPtr& g) {
    if (g->op == FormulaOp::Atom) out.insert(g->atom.predicate);
    for (const auto& k : g->kids) rec(k);
  };
  rec(f);
  return out;
}

// {{{1 printing

namespace {

int level_of(const Formula& f) {
  switch (f.op) {
    case FormulaOp::Implies: return 0;
    case FormulaOp::Or: return 1;
    case FormulaOp::And: return 2;
    default: return 3;
  }
}

std::string print(const Formula& f, int need);

std::string print_items(const FormulaPtr& f) {
  if (f->op != FormulaOp::And) return print(*f, 0);
  std::string out;
  for (std::size_t i = 0; i < f->kids.size(); ++i) {
    if (i != 0) out += ", ";
    out += print(*f->kids[i], 0);
  }
  return out;
}

std::string print_bare(const Formula& f) {
  switch (f.op) {
    case FormulaOp::Atom: return f.atom.str();
    case FormulaOp::True: return "true";
    case FormulaOp::Cmp: return f.lhs.str() + (f.cmp == CmpOp::Eq ? " = " : " != ") + f.rhs.str();
    case FormulaOp::Not: return "not " + print(*f.kids[0], 3);
    case FormulaOp::Diamond: return "diamond " + print(*f.kids[0], 3);
    case FormulaOp::Box: {
      const auto& k = *f.kids[0];
      if (k.op == FormulaOp::Implies && k.kids[1]->op == FormulaOp::Atom) {
        return "box(" + k.kids[1]->atom.str() + " <- " + print_items(k.kids[0]) + ")";
      }
      return "box " + print(k, 3);
    }
    case FormulaOp::At: return "at[" + f.time.str() + "] " + print(*f.kids[0], 3);
    case FormulaOp::Window: return "wplus[" + std::to_string(f.width) + "] " + print(*f.kids[0], 3);
    case FormulaOp::Reset: return "reset " + print(*f.kids[0], 3);
    case FormulaOp::Implies: return print(*f.kids[0], 1) + " -> " + print(*f.kids[1], 0);
    case FormulaOp::Or:
    case FormulaOp::And: {
      std::string sep = f.op == FormulaOp::Or ? " or " : " and ";
      int need = f.op == FormulaOp::Or ? 2 : 3;
      std::string out;
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i != 0) out += sep;
        out += print(*f.kids[i], need);
      }
      return out;
    }
  }
  return "?";
}

std::string print(const Formula& f, int need) {
  std::string s = print_bare(f);
  return level_of(f) < need ? "(" + s + ")" : s;
}

}  // namespace

std::string Formula::str() const { return print(*this, 0); }

std::string LarsRule::str() const {
  std::string out = print(*head, 0);
  if (!body.empty()) {
    out += " <- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i != 0) out += ", ";
      out += print(*body[i], 0);
    }
  }
  return out + ".";
}

const Atom& LarsRule::head_atom() const {
  switch (head->op) {
    case FormulaOp::Atom: return head->atom;
    case FormulaOp::At:
      if (head->kids[0]->op == FormulaOp::Atom) return head->kids[0]->atom;
      break;
    case FormulaOp::Box:
      if (head->kids[0]->op == FormulaOp::Implies && head->kids[0]->kids[1]->op == FormulaOp::Atom) {
        return head->kids[0]->kids[1]->atom;
      }
      break;
    default:
      break;
  }
  throw ValidationError("unsupported rule head " + head->str());
}

void check_head_shape(const LarsRule& rule) {
  (void)rule.head_atom();
  if (rule.head->op == FormulaOp::Box && !rule.body.empty()) {
    throw ValidationError("a box-implication head needs an empty body: " + rule.str());
  }
}

std::set<std::string> LarsProgram::head_predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) out.insert(r.head_atom().predicate);
  return out;
}

std::set<std::string> LarsProgram::predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    auto h = formula_predicates(r.head);
    out.insert(h.begin(), h.end());
    for (const auto& b : r.body) {
      auto p = formula_predicates(b);
      out.insert(p.begin(), p.end());
    }
  }
  return out;
}

std::set<Constant> LarsProgram::constants() const {
  std::set<Constant> out;
  std::function<void(const FormulaPtr&)> rec = [&](const FormulaPtr& f) {
    for (const auto& t : f->atom.args) {
      if (!t.is_variable()) out.insert(t.value);
    }
    for (const auto& k : f->kids) rec(k);
  };
  for (const auto& r : rules) {
    rec(r.head);
    for (const auto& b : r.body) rec(b);
  }
  return out;
}

// {{{1 parser

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(TokenCursor& cur) : cur_(cur) {}

  FormulaPtr formula() {
    FormulaPtr left = disjunction();
    if (cur_.accept(TokenKind::RightArrow)) return lf::implies(std::move(left), formula());
    return left;
  }

  std::vector<FormulaPtr> items(TokenKind stop) {
    std::vector<FormulaPtr> out;
    if (cur_.at(stop)) return out;
    do {
      out.push_back(formula());
    } while (cur_.accept(TokenKind::Comma));
    return out;
  }

 private:
  FormulaPtr disjunction() {
    std::vector<FormulaPtr> kids{conjunction()};
    while (cur_.accept_word("or")) kids.push_back(conjunction());
    return lf::disj(std::move(kids));
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> kids{unary()};
    while (cur_.accept_word("and")) kids.push_back(unary());
    return lf::conj(std::move(kids));
  }

  FormulaPtr unary() {
    if (cur_.at_word("not")) {
      cur_.advance();
      return lf::neg(unary());
    }
    if (cur_.at_word("diamond")) {
      cur_.advance();
      return lf::diamond(unary());
    }
    if (cur_.at_word("reset")) {
      cur_.advance();
      return lf::reset(unary());
    }
    if (cur_.at_word("box")) {
      cur_.advance();
      if (cur_.at(TokenKind::LParen)) {
        cur_.advance();
        FormulaPtr inner = formula();
        if (cur_.accept(TokenKind::LeftArrow)) {
          auto prem = items(TokenKind::RParen);
          cur_.expect(TokenKind::RParen, "')'");
          return lf::box(lf::implies(lf::conj(std::move(prem)), std::move(inner)));
        }
        cur_.expect(TokenKind::RParen, "')'");
        return lf::box(std::move(inner));
      }
      return lf::box(unary());
    }
    if ((cur_.at_word("at") || cur_.at(TokenKind::AtSign)) && cur_.at(TokenKind::LBracket, 1)) {
      cur_.advance();
      cur_.advance();
      Term t = detail::parse_term(cur_);
      cur_.expect(TokenKind::RBracket, "']'");
      return lf::at(std::move(t), unary());
    }
    if (cur_.at_word("wplus") && cur_.at(TokenKind::LBracket, 1)) {
      cur_.advance();
      cur_.advance();
      auto w = cur_.expect(TokenKind::Number, "window width").number;
      cur_.expect(TokenKind::RBracket, "']'");
      return lf::window(w, unary());
    }
    return primary();
  }

  FormulaPtr comparison(Term lhs) {
    CmpOp op;
    if (cur_.accept(TokenKind::Equal)) {
      op = CmpOp::Eq;
    } else if (cur_.accept(TokenKind::NotEqual)) {
      op = CmpOp::Ne;
    } else {
      cur_.fail("expected '=' or '!='");
    }
    Term rhs = detail::parse_term(cur_);
    return op == CmpOp::Eq ? lf::eq(std::move(lhs), std::move(rhs)) : lf::ne(std::move(lhs), std::move(rhs));
  }

  FormulaPtr primary() {
    if (cur_.accept(TokenKind::LParen)) {
      FormulaPtr f = formula();
      cur_.expect(TokenKind::RParen, "')'");
      return f;
    }
    if (cur_.accept_word("true")) return lf::top();
    if (cur_.at(TokenKind::Variable) || cur_.at(TokenKind::Number)) {
      return comparison(detail::parse_term(cur_));
    }
    if (cur_.at(TokenKind::Identifier) &&
        (cur_.at(TokenKind::Equal, 1) || cur_.at(TokenKind::NotEqual, 1))) {
      return comparison(Term::symbol(cur_.advance().text));
    }
    return lf::atom(detail::parse_atom(cur_));
  }

  TokenCursor& cur_;
};

void infer_signature(LarsProgram& prog) {
  for (const auto& r : prog.rules) {
    const Atom& h = r.head_atom();
    prog.signature.ensure(h.predicate, h.args.size(), PredicateKind::Intensional);
  }
  std::function<void(const FormulaPtr&)> rec = [&](const FormulaPtr& f) {
    if (f->op == FormulaOp::Atom) {
      prog.signature.ensure(f->atom.predicate, f->atom.args.size(), PredicateKind::StreamExtensional);
    }
    for (const auto& k : f->kids) rec(k);
  };
  for (const auto& r : prog.rules) {
    rec(r.head);
    for (const auto& b : r.body) rec(b);
  }
}

}  // namespace

LarsProgram parse_lars(std::string_view text) {
  TokenCursor cur(tokenize(text));
  std::vector<Diagnostic> diags;
  LarsProgram prog;
  std::vector<std::pair<PredicateDecl, Diagnostic>> decls;
  while (!cur.done()) {
    const Token start = cur.peek();
    try {
      if (cur.at(TokenKind::Directive)) {
        std::string name = cur.advance().text;
        auto kind = detail::declaration_kind(name);
        if (!kind) throw SyntaxIssue{Diagnostic{start.line, start.column, "unknown directive #" + name}};
        decls.emplace_back(detail::parse_declaration(cur, *kind), Diagnostic{start.line, start.column, ""});
        continue;
      }
      FormulaParser p(cur);
      LarsRule r;
      r.head = p.formula();
      if (cur.accept(TokenKind::LeftArrow)) r.body = p.items(TokenKind::Period);
      cur.expect(TokenKind::Period, "'.'");
      try {
        check_head_shape(r);
      } catch (const ValidationError& e) {
        throw SyntaxIssue{Diagnostic{start.line, start.column, e.what()}};
      }
      prog.rules.push_back(std::move(r));
    } catch (const SyntaxIssue& issue) {
      diags.push_back(issue.diagnostic);
      cur.recover();
    }
  }
  if (!diags.empty()) throw ParseError(std::move(diags));
  for (auto& [decl, where] : decls) {
    try {
      prog.signature.declare(decl);
    } catch (const ValidationError& e) {
      diags.push_back(Diagnostic{where.line, where.column, e.what()});
    }
  }
  try {
    infer_signature(prog);
  } catch (const ValidationError& e) {
    diags.push_back(Diagnostic{0, 0, e.what()});
  }
  if (!diags.empty()) throw ParseError(std::move(diags));
  return prog;
}

FormulaPtr parse_lars_formula(std::string_view text) {
  TokenCursor cur(tokenize(text));
  try {
    FormulaParser p(cur);
    FormulaPtr f = p.formula();
    if (!cur.done()) cur.fail("trailing input after formula");
    return f;
  } catch (const SyntaxIssue& issue) {
    throw ParseError({issue.diagnostic});
  }
}

std::string print_lars(const LarsProgram& program) {
  std::string out = detail::print_declarations(program.signature);
  for (const auto& r : program.rules) out += r.str() + "\n";
  return out;
}

// {{{1 stratification

std::vector<std::vector<std::size_t>> negation_strata(const LarsProgram& program) {
  detail::PredGraph g;
  for (const auto& r : program.rules) {
    const std::string head = r.head_atom().predicate;
    g.nodes.insert(head);
    std::function<void(const FormulaPtr&, bool)> walk = [&](const FormulaPtr& f, bool negative) {
      switch (f->op) {
        case FormulaOp::Atom:
          g.add(f->atom.predicate, head, negative ? 1 : 0);
          return;
        case FormulaOp::Not:
          walk(f->kids[0], true);
          return;
        case FormulaOp::Implies:
          walk(f->kids[0], true);
          walk(f->kids[1], negative);
          return;
        default:
          for (const auto& k : f->kids) walk(k, negative);
      }
    };
    if (r.head->op == FormulaOp::Box) {
      const auto& imp = r.head->kids[0];
      walk(imp->kids[0], false);
    }
    for (const auto& b : r.body) walk(b, false);
  }
  auto strat = detail::stratify(g);
  if (strat.bad_cycle) {
    std::string msg = "program is not stratified with respect to negation: cycle";
    for (const auto& p : *strat.bad_cycle) msg += " " + p;
    throw UnsupportedProgram(msg);
  }
  std::map<int, std::vector<std::size_t>> by_level;
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    by_level[strat.level.at(program.rules[i].head_atom().predicate)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [lv, rs] : by_level) {
    (void)lv;
    out.push_back(std::move(rs));
  }
  return out;
}

}  // namespace sreason
