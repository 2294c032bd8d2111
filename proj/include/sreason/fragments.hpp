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

#ifndef SREASON_FRAGMENTS_HPP
#define SREASON_FRAGMENTS_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sreason/lars.hpp"
#include "sreason/ldsr.hpp"

namespace sreason {

enum class Fragment { F1 = 1, F2, F3, F4, F5, F6, F7 };

std::string to_string(Fragment f);
/// Accepts "F3" or "3". Throws ValidationError otherwise.
Fragment parse_fragment(const std::string& text);
bool is_lars_fragment(Fragment f);

// {{{1 LARS rule shapes

enum class BetaKind {
  Atom,        // p
  WindowDiamond,  // ⊞ᵐ◇p
  WindowBox,   // ⊞ᵐ□p
  Offset,      // ⊞⁰@_T⊤ ∧ @_{T−K}p
};

/// One premise/body formula of a type (I) or (II) rule.
struct Beta {
  bool negative = false;
  BetaKind kind = BetaKind::Atom;
  Atom atom;
  std::int64_t window = 0;  // m
  std::int64_t offset = 0;  // K
  std::string time_var;     // T
};

enum class ShapeKind { TypeI, TypeII, Other };

struct RuleShape {
  ShapeKind kind = ShapeKind::Other;
  /// cons(r) for type (I), head(r) for type (II).
  Atom head;
  /// prem(r) or body(r).
  std::vector<Beta> betas;
  /// Why the rule is `Other`.
  std::string reason;
};

/// Matches β modulo the order of the two conjuncts of the offset pattern.
std::optional<Beta> match_beta(const FormulaPtr& f);

/// `signature` decides whether the head predicate is intensional.
RuleShape classify_rule_shape(const LarsRule& rule, const Signature& signature);
RuleShape classify_rule_shape(const LarsRule& rule);

/// M(P), computed over the type (I)/(II) rules of the program.
std::set<std::string> marked_predicates(const LarsProgram& program);

enum class ArcLabel { Positive, Negative };

struct DepArc {
  std::string from;
  std::string to;
  ArcLabel label = ArcLabel::Positive;

  friend auto operator<=>(const DepArc&, const DepArc&) = default;
  friend bool operator==(const DepArc&, const DepArc&) = default;
};

struct DepGraph {
  std::set<std::string> nodes;
  std::set<DepArc> arcs;
};

/// G(P) over the type (I)/(II) rules of the program.
DepGraph build_dep_graph(const LarsProgram& program);

// {{{1 verdicts

struct Violation {
  Fragment fragment = Fragment::F1;
  /// Condition id, e.g. "i", "iv".
  std::string condition;
  std::string message;
  std::optional<std::size_t> rule;
  /// Offending predicates, or the cycle with the first node repeated.
  std::vector<std::string> predicates;
};

struct FragmentVerdict {
  std::set<Fragment> memberships;
  std::vector<Violation> violations;

  bool member(Fragment f) const { return memberships.count(f) != 0; }
};

FragmentVerdict classify_lars_fragments(const LarsProgram& program);
FragmentVerdict classify_ldsr_fragments(const LdsrProgram& program);

/// True when the verdict respects F3⊆F2⊆F1, F6⊆F5⊆F4 and F7⊆F4.
bool inclusions_hold(const FragmentVerdict& verdict);

/// Plain-text report, one line per fragment of the language.
std::string format_verdict(const FragmentVerdict& verdict, bool lars);

}  // namespace sreason

#endif  // SREASON_FRAGMENTS_HPP
