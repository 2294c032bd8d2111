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

#ifndef SREASON_LDSR_HPP
#define SREASON_LDSR_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sreason/core.hpp"
#include "sreason/stream.hpp"

namespace sreason {

// {{{1 syntax

enum class StreamingKind { AtLeast, AlwaysIn, Count };

/// `a at least c in D`, `a always in D` or `a count t in D`. The bound is a
/// number for at least, a number or variable for count, and unused for
/// always in.
struct StreamingAtom {
  StreamingKind kind = StreamingKind::AtLeast;
  Atom atom;
  Term bound = Term::number(1);
  std::set<std::int64_t> offsets{0};

  static StreamingAtom at_least(Atom a, std::int64_t c, std::set<std::int64_t> d);
  static StreamingAtom always_in(Atom a, std::set<std::int64_t> d);
  static StreamingAtom count(Atom a, Term t, std::set<std::int64_t> d);
  /// The bare atom `a`, i.e. `a at least 1 in {0}`.
  static StreamingAtom bare(Atom a) { return at_least(std::move(a), 1, {0}); }

  bool has_count_variable() const { return kind == StreamingKind::Count && bound.is_variable(); }
  bool is_ground() const;
  std::string str() const;

  friend bool operator==(const StreamingAtom&, const StreamingAtom&) = default;
  friend auto operator<=>(const StreamingAtom&, const StreamingAtom&) = default;
};

struct StreamingLiteral {
  bool negative = false;
  StreamingAtom atom;

  bool harmless() const { return !negative && atom.kind != StreamingKind::Count; }
  std::string str() const;

  friend bool operator==(const StreamingLiteral&, const StreamingLiteral&) = default;
  friend auto operator<=>(const StreamingLiteral&, const StreamingLiteral&) = default;
};

enum class RuleForm { Permanent, Temp };

struct LdsrRule {
  RuleForm form = RuleForm::Permanent;
  Atom head;
  std::vector<StreamingLiteral> body;

  bool is_temp() const { return form == RuleForm::Temp; }
  std::set<std::string> variables() const;
  std::string str() const;

  friend bool operator==(const LdsrRule&, const LdsrRule&) = default;
};

struct LdsrProgram {
  std::vector<LdsrRule> rules;
  Signature signature;

  std::set<std::string> head_predicates() const;
  std::set<std::string> head_predicates(RuleForm form) const;
  std::set<std::string> predicates() const;
  /// Every constant occurring in a rule (counting bounds included).
  std::set<Constant> constants() const;
  /// Largest |D| over count literals with a variable bound, 0 if none.
  std::size_t max_count_window() const;
};

/// `%` comments, `#stream p/2.`, `#background q/1.`, `#intensional r/0.`,
/// rules `h :- l1, ..., lk.` and `#temp h :- ... .`. Undeclared head
/// predicates become intensional, undeclared body-only predicates
/// stream-extensional. Every rule is checked for safety.
LdsrProgram parse_ldsr(std::string_view text);

/// Canonical text: explicit declarations first, then one rule per line.
std::string print_ldsr(const LdsrProgram& program);

/// Throws ValidationError when a head variable or a variable of a negative
/// literal does not occur in a positive literal.
void check_safety(const LdsrRule& rule);

// {{{1 stratification

/// Returns the strata in evaluation order as lists of rule indices. Throws
/// StratificationError with a predicate cycle when a non-harmless literal
/// depends on its own stratum.
std::vector<std::vector<std::size_t>> check_stratified(const LdsrProgram& program);

// {{{1 grounding and entailment

/// Constants of the program, the input and B, plus 1..k where k is the
/// largest window of a count-variable literal.
std::set<Constant> default_domain(const LdsrProgram& program, const Stream& input,
                                  const AtomSet& background);

/// Gr(P) over `domain`. A variable used as the bound of a positive count
/// literal only takes numbers in 1..|D|; other occurrences of count
/// variables range over the positive numbers of the domain.
LdsrProgram ground_ldsr(const LdsrProgram& program, const std::set<Constant>& domain);

/// Table-1 entailment of a ground literal at the last time point of `sigma`.
bool entails(const Stream& sigma, const StreamingLiteral& literal);

// {{{1 answer streams

struct LdsrEvalResult {
  Stream answer_stream;
  AtomSet streaming_model;
  /// temp_trace[i]: atoms dropped from slot i by the permanent-part step.
  std::vector<AtomSet> temp_trace;
};

/// Operational evaluation: stratified fixpoint per time point, permanent
/// part for every slot but the last. B is added as facts. When `domain` is
/// absent, default_domain is used.
LdsrEvalResult eval_answer_stream(const LdsrProgram& program, const Stream& input,
                                  const AtomSet& background,
                                  const std::optional<std::set<Constant>>& domain = std::nullopt);

/// Enumerates candidate models per time point and checks model, reduct
/// minimality and uniqueness directly. Throws InstanceTooLarge when a slot
/// has more than `max_candidates` derivable atoms.
LdsrEvalResult brute_force_answer_stream(const LdsrProgram& program, const Stream& input,
                                         const AtomSet& background,
                                         const std::optional<std::set<Constant>>& domain = std::nullopt,
                                         std::size_t max_candidates = 12);

/// Checks that the input only uses non-intensional predicates.
void check_input_kinds(const Signature& signature, const Stream& input, const AtomSet& background);

std::string format_offsets(const std::set<std::int64_t>& offsets);

}  // namespace sreason

#endif  // SREASON_LDSR_HPP
