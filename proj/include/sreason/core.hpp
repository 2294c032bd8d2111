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

#ifndef SREASON_CORE_HPP
#define SREASON_CORE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sreason {

// {{{1 errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

/// Raised by both parsers; carries every diagnostic collected before giving up.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A program whose dependency graph has a cycle through a non-harmless or
/// negated edge. `cycle()` lists the predicates along the cycle.
class StratificationError : public Error {
 public:
  StratificationError(std::string message, std::vector<std::string> cycle)
      : Error(std::move(message)), cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class UnsupportedProgram : public Error {
 public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

class NoAnswerStream : public Error {
 public:
  using Error::Error;
};

// {{{1 constants, terms, atoms

/// A constant is either a symbol or a natural number.
class Constant {
 public:
  Constant() : value_(std::int64_t{0}) {}
  static Constant number(std::int64_t n) { return Constant(n); }
  static Constant symbol(std::string s) { return Constant(std::move(s)); }

  bool is_number() const { return std::holds_alternative<std::int64_t>(value_); }
  bool is_symbol() const { return !is_number(); }
  std::int64_t as_number() const { return std::get<std::int64_t>(value_); }
  const std::string& as_symbol() const { return std::get<std::string>(value_); }

  std::string str() const;

  friend bool operator==(const Constant&, const Constant&) = default;
  friend auto operator<=>(const Constant&, const Constant&) = default;

 private:
  explicit Constant(std::int64_t n) : value_(n) {}
  explicit Constant(std::string s) : value_(std::move(s)) {}
  std::variant<std::int64_t, std::string> value_;
};

/// A term is a constant or a variable with an integer offset (`X`, `T-1`, `C+1`).
struct Term {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  Constant value;
  std::string var;
  std::int64_t offset = 0;

  static Term constant(Constant c) {
    Term t;
    t.value = std::move(c);
    return t;
  }
  static Term number(std::int64_t n) { return constant(Constant::number(n)); }
  static Term symbol(std::string s) { return constant(Constant::symbol(std::move(s))); }
  static Term variable(std::string name, std::int64_t offset = 0) {
    Term t;
    t.kind = Kind::Variable;
    t.var = std::move(name);
    t.offset = offset;
    return t;
  }

  bool is_variable() const { return kind == Kind::Variable; }
  std::string str() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

struct GroundAtom {
  std::string predicate;
  std::vector<Constant> args;

  std::string str() const;

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

/// Possibly non-ground predicate atom.
struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  GroundAtom ground() const;  // throws if a variable is present
  std::string str() const;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

using AtomSet = std::set<GroundAtom>;

std::ostream& operator<<(std::ostream& os, const Constant& c);
std::ostream& operator<<(std::ostream& os, const GroundAtom& a);

/// Canonical printing of a set of atoms: space separated, sorted.
std::string to_string(const AtomSet& atoms);

// {{{1 predicate declarations

enum class PredicateKind { StreamExtensional, BackgroundExtensional, Intensional };

std::string_view to_string(PredicateKind kind);

struct PredicateDecl {
  std::string name;
  PredicateKind kind = PredicateKind::Intensional;
  std::size_t arity = 0;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

/// Partition of predicate names into stream-extensional, background-extensional
/// and intensional predicates, plus their arities.
class Signature {
 public:
  /// Adds an explicit declaration. A conflicting redeclaration is an error.
  void declare(const PredicateDecl& decl);

  /// Records `name/arity` with `kind` unless the predicate is already known;
  /// checks the arity in either case.
  void ensure(const std::string& name, std::size_t arity, PredicateKind kind);

  /// Arity check only; throws ValidationError on a clash.
  void check_arity(const std::string& name, std::size_t arity) const;

  const PredicateDecl* find(const std::string& name) const;
  PredicateKind kind_of(const std::string& name) const;  // throws if unknown
  bool is_intensional(const std::string& name) const;

  const std::map<std::string, PredicateDecl>& decls() const { return decls_; }
  /// Names that were declared with a directive rather than inferred.
  const std::set<std::string>& explicit_names() const { return explicit_; }

  /// Merges `other` into this signature with declare() semantics.
  void merge(const Signature& other);

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, PredicateDecl> decls_;
  std::set<std::string> explicit_;
};

// {{{1 small helpers

/// Produces variable names that do not clash with a reserved set.
class FreshNames {
 public:
  FreshNames() = default;
  explicit FreshNames(std::set<std::string> used) : used_(std::move(used)) {}

  void reserve(const std::string& name) { used_.insert(name); }
  /// Returns `base` if free, otherwise `base1`, `base2`, ...
  std::string take(const std::string& base);
  /// Returns `base<k>` for the smallest k >= 1 that is free.
  std::string numbered(const std::string& base);

 private:
  std::set<std::string> used_;
};

bool is_variable_name(std::string_view name);

}  // namespace sreason

#endif  // SREASON_CORE_HPP
