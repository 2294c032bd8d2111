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

// Pieces of surface syntax shared by the two program parsers.

#ifndef SREASON_SRC_SYNTAX_UTIL_HPP
#define SREASON_SRC_SYNTAX_UTIL_HPP

#include <optional>
#include <string>
#include <vector>

#include "sreason/core.hpp"
#include "sreason/lexer.hpp"

namespace sreason::detail {

/// number | symbol | Var | Var+k | Var-k
inline Term parse_term(TokenCursor& cur) {
  if (cur.at(TokenKind::Number)) return Term::number(cur.advance().number);
  if (cur.at(TokenKind::Identifier)) return Term::symbol(cur.advance().text);
  if (cur.at(TokenKind::Variable)) {
    std::string name = cur.advance().text;
    std::int64_t offset = 0;
    if (cur.at(TokenKind::Plus) || cur.at(TokenKind::Minus)) {
      bool minus = cur.advance().kind == TokenKind::Minus;
      offset = cur.expect(TokenKind::Number, "offset").number;
      if (minus) offset = -offset;
    }
    return Term::variable(std::move(name), offset);
  }
  cur.fail("expected a term");
}

inline Atom parse_atom(TokenCursor& cur) {
  Atom atom;
  atom.predicate = cur.expect(TokenKind::Identifier, "predicate name").text;
  if (cur.accept(TokenKind::LParen)) {
    do {
      atom.args.push_back(parse_term(cur));
    } while (cur.accept(TokenKind::Comma));
    cur.expect(TokenKind::RParen, "')'");
  }
  return atom;
}

inline std::optional<PredicateKind> declaration_kind(const std::string& directive) {
  if (directive == "stream") return PredicateKind::StreamExtensional;
  if (directive == "background") return PredicateKind::BackgroundExtensional;
  if (directive == "intensional") return PredicateKind::Intensional;
  return std::nullopt;
}

/// `name/arity.` after a declaration directive.
inline PredicateDecl parse_declaration(TokenCursor& cur, PredicateKind kind) {
  PredicateDecl decl;
  decl.kind = kind;
  decl.name = cur.expect(TokenKind::Identifier, "predicate name").text;
  cur.expect(TokenKind::Slash, "'/'");
  decl.arity = static_cast<std::size_t>(cur.expect(TokenKind::Number, "arity").number);
  cur.expect(TokenKind::Period, "'.'");
  return decl;
}

inline std::string print_declarations(const Signature& sig) {
  std::string out;
  for (const auto& name : sig.explicit_names()) {
    const auto& d = sig.decls().at(name);
    out += '#';
    out += to_string(d.kind);
    out += ' ' + d.name + '/' + std::to_string(d.arity) + ".\n";
  }
  return out;
}

inline void collect_variables(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.var);
}

inline void collect_variables(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args) collect_variables(t, out);
}

}  // namespace sreason::detail

#endif  // SREASON_SRC_SYNTAX_UTIL_HPP
