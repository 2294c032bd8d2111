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

#ifndef SREASON_LARS_HPP
#define SREASON_LARS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sreason/core.hpp"
#include "sreason/stream.hpp"

namespace sreason {

// {{{1 formulas

enum class FormulaOp { Atom, True, Not, And, Or, Implies, Diamond, Box, At, Window, Reset, Cmp };
enum class CmpOp { Eq, Ne };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula node. Implies keeps (premise, conclusion) in kids.
struct Formula {
  FormulaOp op = FormulaOp::True;
  Atom atom;                 // Atom
  Term time;                 // At
  std::int64_t width = 0;    // Window
  CmpOp cmp = CmpOp::Eq;     // Cmp
  Term lhs, rhs;             // Cmp
  std::vector<FormulaPtr> kids;

  std::string str() const;
};

namespace lf {
FormulaPtr atom(Atom a);
FormulaPtr top();
/// ¬⊤
FormulaPtr bottom();
FormulaPtr neg(FormulaPtr f);
/// n-ary; a singleton collapses to its element, an empty list is ⊤.
FormulaPtr conj(std::vector<FormulaPtr> fs);
/// n-ary; a singleton collapses, an empty list is ¬⊤.
FormulaPtr disj(std::vector<FormulaPtr> fs);
FormulaPtr implies(FormulaPtr premise, FormulaPtr conclusion);
FormulaPtr diamond(FormulaPtr f);
FormulaPtr box(FormulaPtr f);
FormulaPtr at(Term t, FormulaPtr f);
FormulaPtr window(std::int64_t w, FormulaPtr f);
FormulaPtr reset(FormulaPtr f);
FormulaPtr eq(Term a, Term b);
FormulaPtr ne(Term a, Term b);
/// ⊞⁰@_T⊤
FormulaPtr now_anchor(const std::string& var);
}  // namespace lf

/// Structural equality.
bool same_formula(const FormulaPtr& a, const FormulaPtr& b);
/// Deep copy with fresh node identities.
FormulaPtr clone(const FormulaPtr& f);
std::set<std::string> formula_variables(const FormulaPtr& f);
std::set<std::string> formula_predicates(const FormulaPtr& f);

/// Renames variables through `rename` (missing names are kept).
FormulaPtr rename_variables(const FormulaPtr& f, const std::map<std::string, std::string>& rename);

// {{{1 programs

struct LarsRule {
  FormulaPtr head;
  std::vector<FormulaPtr> body;

  std::string str() const;
  /// The head atom of an atom, @-atom or box-implication head.
  const Atom& head_atom() const;
};

struct LarsProgram {
  std::vector<LarsRule> rules;
  Signature signature;

  std::set<std::string> head_predicates() const;
  std::set<std::string> predicates() const;
  std::set<Constant> constants() const;
};

/// Rules `head <- b1, ..., bk.` over the surface syntax `not`, `and`, `or`,
/// `->`, `diamond`, `box`, `at[t]`, `wplus[w]`, `reset`, `true`, `X = Y`,
/// `X != Y`; `box(h <- b1, ..., bk)` abbreviates box((b1 and ...) -> h).
/// Declarations as for LDSR. Heads must be atoms, @-atoms or box
/// implications with an empty body.
LarsProgram parse_lars(std::string_view text);
FormulaPtr parse_lars_formula(std::string_view text);
std::string print_lars(const LarsProgram& program);

/// Throws ValidationError for an unsupported head shape.
void check_head_shape(const LarsRule& rule);

/// Throws UnsupportedProgram when a predicate depends negatively on itself.
std::vector<std::vector<std::size_t>> negation_strata(const LarsProgram& program);

// {{{1 semantics

/// Constants of the program (outside time positions), the input and B.
std::set<Constant> default_domain(const LarsProgram& program, const Stream& input,
                                  const AtomSet& background);

/// M, Σ', t ⊩ φ where Σ' is `sigma` restricted to `interval`. Variables that
/// only occur under one negation are quantified inside it; any other
/// variable is a contract violation.
bool eval_formula(const Stream& sigma, const AtomSet& background, Interval interval, std::int64_t t,
                  const FormulaPtr& phi, const std::set<Constant>& domain = {});

/// As eval_formula, but variables left free at the top are read
/// existentially, the way a rule body is read. An empty `domain` means the
/// constants of `sigma` and `background`.
bool eval_formula_exists(const Stream& sigma, const AtomSet& background, Interval interval,
                         std::int64_t t, const FormulaPtr& phi, const std::set<Constant>& domain = {});

struct LarsAnswerStream {
  Stream stream;
  std::size_t eval_point = 0;
};

/// AS(P, I, t) for negation-stratified programs. Throws NoAnswerStream if a
/// rule would derive an extensional atom outside I.
LarsAnswerStream eval_answer_stream_lars(const LarsProgram& program, const Stream& input,
                                         const AtomSet& background, std::size_t t,
                                         const std::optional<std::set<Constant>>& domain = std::nullopt);

struct GroundLarsRule {
  LarsRule rule;
  /// Value of the reference variable of a ⊞⁰@_T⊤ conjunct, if the rule has one.
  std::optional<std::int64_t> anchor;
};

/// Instantiates rule-level variables: time variables over `timepoints`, data
/// variables over `domain`. Instances whose head time leaves the time
/// points are dropped.
std::vector<GroundLarsRule> ground_lars(const LarsProgram& program, const std::set<Constant>& domain,
                                        const std::set<std::int64_t>& timepoints);

struct AnswerCheck {
  bool ok = false;
  std::string reason;
};

/// Checks the answer-stream conditions directly on the ground program:
/// interpretation stream for I, model of P at t, and ⊆-minimal model of the
/// reduct among interpretation streams containing I.
AnswerCheck verify_answer_stream(const LarsProgram& program, const Stream& input,
                                 const AtomSet& background, std::size_t t, const Stream& candidate,
                                 const std::optional<std::set<Constant>>& domain = std::nullopt,
                                 std::size_t max_derived = 16);

}  // namespace sreason

#endif  // SREASON_LARS_HPP
