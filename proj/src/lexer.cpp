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

#include "sreason/lexer.hpp"

#include <cctype>

namespace sreason {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::string s, int c) {
    Token t;
    t.kind = kind;
    t.text = std::move(s);
    t.line = line;
    t.column = c;
    out.push_back(std::move(t));
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      ++col;
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    int start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0) ++j;
      Token t;
      t.kind = TokenKind::Number;
      t.text = std::string(text.substr(i, j - i));
      t.number = std::stoll(t.text);
      t.line = line;
      t.column = start_col;
      out.push_back(std::move(t));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      bool upper = std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_';
      push(upper ? TokenKind::Variable : TokenKind::Identifier, std::move(word), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (c == '#') {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(TokenKind::Directive, std::string(text.substr(i + 1, j - i - 1)), start_col);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == ":-") {
      push(TokenKind::If, ":-", start_col);
    } else if (two == "<-") {
      push(TokenKind::LeftArrow, "<-", start_col);
    } else if (two == "->") {
      push(TokenKind::RightArrow, "->", start_col);
    } else if (two == "!=") {
      push(TokenKind::NotEqual, "!=", start_col);
    } else {
      TokenKind kind;
      switch (c) {
        case '(': kind = TokenKind::LParen; break;
        case ')': kind = TokenKind::RParen; break;
        case '{': kind = TokenKind::LBrace; break;
        case '}': kind = TokenKind::RBrace; break;
        case '[': kind = TokenKind::LBracket; break;
        case ']': kind = TokenKind::RBracket; break;
        case ',': kind = TokenKind::Comma; break;
        case '.': kind = TokenKind::Period; break;
        case '/': kind = TokenKind::Slash; break;
        case ':': kind = TokenKind::Colon; break;
        case '=': kind = TokenKind::Equal; break;
        case '+': kind = TokenKind::Plus; break;
        case '-': kind = TokenKind::Minus; break;
        case '@': kind = TokenKind::AtSign; break;
        default:
          throw ParseError({Diagnostic{line, col, std::string("unexpected character '") + c + "'"}});
      }
      push(kind, std::string(1, c), start_col);
      ++i;
      ++col;
      continue;
    }
    i += 2;
    col += 2;
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Variable: return "variable";
    case TokenKind::Number: return "number";
    case TokenKind::Directive: return "directive";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Period: return "'.'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Colon: return "':'";
    case TokenKind::If: return "':-'";
    case TokenKind::LeftArrow: return "'<-'";
    case TokenKind::RightArrow: return "'->'";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'!='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::AtSign: return "'@'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  std::size_t i = pos_ + ahead;
  if (i >= tokens_.size()) return tokens_.back();
  return tokens_[i];
}

bool TokenCursor::at_word(std::string_view word, std::size_t ahead) const {
  const auto& t = peek(ahead);
  return t.kind == TokenKind::Identifier && t.text == word;
}

bool TokenCursor::accept(TokenKind kind) {
  if (!at(kind)) return false;
  advance();
  return true;
}

bool TokenCursor::accept_word(std::string_view word) {
  if (!at_word(word)) return false;
  advance();
  return true;
}

const Token& TokenCursor::expect(TokenKind kind, std::string_view what) {
  if (!at(kind)) {
    fail("expected " + std::string(what) + ", found " +
         (peek().text.empty() ? std::string(describe(peek().kind)) : "'" + peek().text + "'"));
  }
  return advance();
}

void TokenCursor::expect_word(std::string_view word) {
  if (!at_word(word)) {
    fail("expected '" + std::string(word) + "', found " +
         (peek().text.empty() ? std::string(describe(peek().kind)) : "'" + peek().text + "'"));
  }
  advance();
}

const Token& TokenCursor::advance() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

void TokenCursor::fail(const std::string& message) const {
  throw SyntaxIssue{Diagnostic{peek().line, peek().column, message}};
}

void TokenCursor::recover() {
  while (!done() && !at(TokenKind::Period)) advance();
  accept(TokenKind::Period);
}

}  // namespace sreason
