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

#ifndef SREASON_LEXER_HPP
#define SREASON_LEXER_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sreason/core.hpp"

namespace sreason {

enum class TokenKind {
  Identifier,  // lowercase start
  Variable,    // uppercase start
  Number,
  Directive,   // '#' followed by a name
  LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Period, Slash, Colon,
  If,          // :-
  LeftArrow,   // <-
  RightArrow,  // ->
  Equal, NotEqual, Plus, Minus,
  AtSign,      // @
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::int64_t number = 0;
  int line = 1;
  int column = 1;
};

/// Tokenizes the shared surface syntax of both languages. `%` starts a line
/// comment. Throws ParseError on an unexpected character.
std::vector<Token> tokenize(std::string_view text);

std::string_view describe(TokenKind kind);

/// Cursor over a token vector with the usual peek/accept/expect helpers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(TokenKind kind, std::size_t ahead = 0) const { return peek(ahead).kind == kind; }
  bool at_word(std::string_view word, std::size_t ahead = 0) const;
  bool accept(TokenKind kind);
  bool accept_word(std::string_view word);
  const Token& expect(TokenKind kind, std::string_view what);
  void expect_word(std::string_view word);
  const Token& advance();
  [[noreturn]] void fail(const std::string& message) const;
  /// Skips past the next period (error recovery).
  void recover();
  bool done() const { return at(TokenKind::End); }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Thrown by TokenCursor::fail; parsers catch it per statement and collect
/// diagnostics into a ParseError.
struct SyntaxIssue {
  Diagnostic diagnostic;
};

}  // namespace sreason

#endif  // SREASON_LEXER_HPP
