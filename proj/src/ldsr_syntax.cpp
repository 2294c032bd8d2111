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

#include <algorithm>
#include <map>

#include "sreason/ldsr.hpp"
#include "sreason/lexer.hpp"
#include "graph_util.hpp"
#include "syntax_util.hpp"

namespace sreason {

StreamingAtom StreamingAtom::at_least(Atom a, std::int64_t c, std::set<std::int64_t> d) {
  StreamingAtom s;
  s.kind = StreamingKind::AtLeast;
  s.atom = std::move(a);
  s.bound = Term::number(c);
  s.offsets = std::move(d);
  return s;
}

StreamingAtom StreamingAtom::always_in(Atom a, std::set<std::int64_t> d) {
  StreamingAtom s;
  s.kind = StreamingKind::AlwaysIn;
  s.atom = std::move(a);
  s.bound = Term::number(1);
  s.offsets = std::move(d);
  return s;
}

StreamingAtom StreamingAtom::count(Atom a, Term t, std::set<std::int64_t> d) {
  StreamingAtom s;
  s.kind = StreamingKind::Count;
  s.atom = std::move(a);
  s.bound = std::move(t);
  s.offsets = std::move(d);
  return s;
}

bool StreamingAtom::is_ground() const { return atom.is_ground() && !bound.is_variable(); }

std::string format_offsets(const std::set<std::int64_t>& offsets) {
  bool contiguous = !offsets.empty() && *offsets.begin() == 0 &&
                    *offsets.rbegin() == static_cast<std::int64_t>(offsets.size()) - 1;
  if (contiguous && offsets.size() >= 2) return "[" + std::to_string(*offsets.rbegin()) + "]";
  std::string out = "{";
  bool first = true;
  for (auto d : offsets) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(d);
  }
  return out + "}";
}

std::string StreamingAtom::str() const {
  std::string a = atom.str();
  switch (kind) {
    case StreamingKind::AtLeast:
      if (bound == Term::number(1)) {
        if (offsets == std::set<std::int64_t>{0}) return a;
        return a + " in " + format_offsets(offsets);
      }
      return a + " at least " + bound.str() + " in " + format_offsets(offsets);
    case StreamingKind::AlwaysIn:
      return a + " always in " + format_offsets(offsets);
    case StreamingKind::Count:
      return a + " count " + bound.str() + " in " + format_offsets(offsets);
  }
  return a;
}

std::string StreamingLiteral::str() const { return (negative ? "not " : "") + atom.str(); }

std::set<std::string> LdsrRule::variables() const {
  std::set<std::string> out;
  detail::collect_variables(head, out);
  for (const auto& l : body) {
    detail::collect_variables(l.atom.atom, out);
    detail::collect_variables(l.atom.bound, out);
  }
  return out;
}

std::string LdsrRule::str() const {
  std::string out = is_temp() ? "#temp " : "";
  out += head.str();
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i != 0) out += ", ";
      out += body[i].str();
    }
  }
  return out + ".";
}

std::set<std::string> LdsrProgram::head_predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) out.insert(r.head.predicate);
  return out;
}

std::set<std::string> LdsrProgram::head_predicates(RuleForm form) const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    if (r.form == form) out.insert(r.head.predicate);
  }
  return out;
}

std::set<std::string> LdsrProgram::predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules) {
    out.insert(r.head.predicate);
    for (const auto& l : r.body) out.insert(l.atom.atom.predicate);
  }
  return out;
}

std::set<Constant> LdsrProgram::constants() const {
  std::set<Constant> out;
  auto add = [&](const Term& t) {
    if (!t.is_variable()) out.insert(t.value);
  };
  for (const auto& r : rules) {
    for (const auto& t : r.head.args) add(t);
    for (const auto& l : r.body) {
      for (const auto& t : l.atom.atom.args) add(t);
      if (l.atom.kind == StreamingKind::Count) add(l.atom.bound);
    }
  }
  return out;
}

std::size_t LdsrProgram::max_count_window() const {
  std::size_t k = 0;
  for (const auto& r : rules) {
    for (const auto& l : r.body) {
      if (l.atom.has_count_variable()) k = std::max(k, l.atom.offsets.size());
    }
  }
  return k;
}

void check_safety(const LdsrRule& rule) {
  std::set<std::string> positive;
  for (const auto& l : rule.body) {
    if (l.negative) continue;
    detail::collect_variables(l.atom.atom, positive);
    detail::collect_variables(l.atom.bound, positive);
  }
  std::set<std::string> needed;
  detail::collect_variables(rule.head, needed);
  for (const auto& l : rule.body) {
    if (!l.negative) continue;
    detail::collect_variables(l.atom.atom, needed);
    detail::collect_variables(l.atom.bound, needed);
  }
  for (const auto& v : needed) {
    if (positive.count(v) == 0) {
      throw ValidationError("unsafe rule `" + rule.str() + "`: variable " + v +
                            " does not occur in a positive literal");
    }
  }
}

// {{{1 parser

namespace {

std::set<std::int64_t> parse_offsets(TokenCursor& cur) {
  std::set<std::int64_t> d;
  if (cur.accept(TokenKind::LBracket)) {
    auto w = cur.expect(TokenKind::Number, "window width").number;
    cur.expect(TokenKind::RBracket, "']'");
    for (std::int64_t i = 0; i <= w; ++i) d.insert(i);
    return d;
  }
  cur.expect(TokenKind::LBrace, "'{' or '['");
  do {
    d.insert(cur.expect(TokenKind::Number, "offset").number);
  } while (cur.accept(TokenKind::Comma));
  cur.expect(TokenKind::RBrace, "'}'");
  return d;
}

Atom parse_plain_atom(TokenCursor& cur) {
  Atom a = detail::parse_atom(cur);
  for (const auto& t : a.args) {
    if (t.is_variable() && t.offset != 0) cur.fail("arithmetic terms are not part of LDSR");
  }
  return a;
}

StreamingLiteral parse_literal(TokenCursor& cur) {
  StreamingLiteral lit;
  if (cur.at_word("not") && !cur.at(TokenKind::LParen, 1) && !cur.at(TokenKind::Comma, 1) &&
      !cur.at(TokenKind::Period, 1)) {
    cur.advance();
    lit.negative = true;
  }
  Atom a = parse_plain_atom(cur);
  if (cur.accept_word("at")) {
    cur.expect_word("least");
    const Token& c = cur.expect(TokenKind::Number, "count bound");
    if (c.number < 1) cur.fail("'at least' needs a positive bound");
    cur.expect_word("in");
    lit.atom = StreamingAtom::at_least(std::move(a), c.number, parse_offsets(cur));
  } else if (cur.accept_word("always")) {
    cur.expect_word("in");
    lit.atom = StreamingAtom::always_in(std::move(a), parse_offsets(cur));
  } else if (cur.accept_word("count")) {
    Term t;
    if (cur.at(TokenKind::Number)) {
      auto n = cur.advance().number;
      if (n < 1) cur.fail("counting term must be positive");
      t = Term::number(n);
    } else {
      t = Term::variable(cur.expect(TokenKind::Variable, "counting term").text);
    }
    cur.expect_word("in");
    lit.atom = StreamingAtom::count(std::move(a), std::move(t), parse_offsets(cur));
  } else if (cur.accept_word("in")) {
    lit.atom = StreamingAtom::at_least(std::move(a), 1, parse_offsets(cur));
  } else {
    lit.atom = StreamingAtom::bare(std::move(a));
  }
  return lit;
}

LdsrRule parse_rule(TokenCursor& cur, bool temp) {
  LdsrRule r;
  r.form = temp ? RuleForm::Temp : RuleForm::Permanent;
  r.head = parse_plain_atom(cur);
  if (cur.accept(TokenKind::If)) {
    if (!cur.at(TokenKind::Period)) {
      do {
        r.body.push_back(parse_literal(cur));
      } while (cur.accept(TokenKind::Comma));
    }
  }
  cur.expect(TokenKind::Period, "'.'");
  return r;
}

}  // namespace

LdsrProgram parse_ldsr(std::string_view text) {
  TokenCursor cur(tokenize(text));
  std::vector<Diagnostic> diags;
  LdsrProgram prog;
  std::vector<std::pair<PredicateDecl, Diagnostic>> decls;
  std::vector<int> rule_lines;
  while (!cur.done()) {
    const Token start = cur.peek();
    try {
      if (cur.at(TokenKind::Directive)) {
        std::string name = cur.advance().text;
        if (name == "temp") {
          prog.rules.push_back(parse_rule(cur, true));
          rule_lines.push_back(start.line);
        } else if (auto kind = detail::declaration_kind(name)) {
          decls.emplace_back(detail::parse_declaration(cur, *kind),
                             Diagnostic{start.line, start.column, ""});
        } else {
          throw SyntaxIssue{Diagnostic{start.line, start.column, "unknown directive #" + name}};
        }
      } else {
        prog.rules.push_back(parse_rule(cur, false));
        rule_lines.push_back(start.line);
      }
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
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    const auto& r = prog.rules[i];
    try {
      prog.signature.ensure(r.head.predicate, r.head.args.size(), PredicateKind::Intensional);
    } catch (const ValidationError& e) {
      diags.push_back(Diagnostic{rule_lines[i], 1, e.what()});
    }
  }
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    for (const auto& l : prog.rules[i].body) {
      try {
        prog.signature.ensure(l.atom.atom.predicate, l.atom.atom.args.size(),
                              PredicateKind::StreamExtensional);
      } catch (const ValidationError& e) {
        diags.push_back(Diagnostic{rule_lines[i], 1, e.what()});
      }
    }
  }
  for (std::size_t i = 0; i < prog.rules.size(); ++i) {
    try {
      check_safety(prog.rules[i]);
    } catch (const ValidationError& e) {
      diags.push_back(Diagnostic{rule_lines[i], 1, e.what()});
    }
  }
  if (!diags.empty()) throw ParseError(std::move(diags));
  return prog;
}

std::string print_ldsr(const LdsrProgram& program) {
  std::string out = detail::print_declarations(program.signature);
  for (const auto& r : program.rules) out += r.str() + "\n";
  return out;
}

// {{{1 stratification

std::vector<std::vector<std::size_t>> check_stratified(const LdsrProgram& program) {
  detail::PredGraph g;
  for (const auto& r : program.rules) {
    g.nodes.insert(r.head.predicate);
    for (const auto& l : r.body) g.add(l.atom.atom.predicate, r.head.predicate, l.harmless() ? 0 : 1);
  }
  auto strat = detail::stratify(g);
  if (strat.bad_cycle) {
    const auto& cycle = *strat.bad_cycle;
    std::string msg = "program is not stratified: cycle";
    for (const auto& p : cycle) msg += " " + p;
    msg += " contains the non-harmless dependency of " + cycle[1] + " on " + cycle[0];
    throw StratificationError(msg, cycle);
  }
  std::map<int, std::vector<std::size_t>> by_level;
  for (std::size_t i = 0; i < program.rules.size(); ++i) {
    by_level[strat.level.at(program.rules[i].head.predicate)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> strata;
  for (auto& [lv, rules] : by_level) {
    (void)lv;
    strata.push_back(std::move(rules));
  }
  return strata;
}

}  // namespace sreason
