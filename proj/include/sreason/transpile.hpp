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

// Translations between LARS_D and LDSR programs.
//
// Direction LARS_D -> LDSR: rho1..rho3 (fragments F1..F3).
// Direction LDSR -> LARS_D: rho4..rho7 (fragments F4..F7).
//
// Every LDSR -> LARS_D rule is anchored with ⊞⁰@_T⊤, which binds T to the
// time point at which the rule is evaluated. Streaming atoms become
// formulas over fresh time variables T1, T2, ... compared against T.

#ifndef SREASON_TRANSPILE_HPP
#define SREASON_TRANSPILE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sreason/fragments.hpp"
#include "sreason/lars.hpp"
#include "sreason/ldsr.hpp"

namespace sreason {

/// Suffix of the auxiliary copy of a #temp head predicate.
inline constexpr const char* kTempSuffix = "__temp";
/// Prefix of the auxiliary present/count predicates.
inline constexpr const char* kAuxPrefix = "aux__";

struct ProvenanceEntry {
  std::size_t output_rule = 0;
  /// Unset for rules generated for a count-variable atom.
  std::optional<std::size_t> source_rule;
  /// "f", "g", "g'", "g''" or "C_alpha".
  std::string helper;
};

struct LdsrTranslation {
  LdsrProgram program;
  std::set<std::string> aux_predicates;
  std::vector<ProvenanceEntry> provenance;
};

struct LarsTranslation {
  LarsProgram program;
  std::set<std::string> aux_predicates;
  std::vector<ProvenanceEntry> provenance;
};

// {{{1 LARS_D -> LDSR

/// Throws UnsupportedProgram for a formula outside the β-set.
StreamingLiteral f_translate(const FormulaPtr& beta);

/// Throw UnsupportedProgram with the violated conditions when the program
/// is outside the fragment.
LdsrTranslation rho1(const LarsProgram& program);
LdsrTranslation rho2(const LarsProgram& program);
LdsrTranslation rho3(const LarsProgram& program);

// {{{1 LDSR -> LARS_D

/// Supplies fresh time variables for one rule.
class TimeVars {
 public:
  explicit TimeVars(std::set<std::string> reserved);
  /// The reference variable, usually "T".
  const std::string& reference() const { return reference_; }
  std::string next();
  /// Fresh name for a renamed data variable.
  std::string data(const std::string& base);

 private:
  FreshNames names_;
  std::string reference_;
  int counter_ = 0;
};

/// Name of the count atom that stands for `alpha` (a count-variable atom).
std::string count_predicate(const StreamingAtom& alpha);
std::string present_predicate(const StreamingAtom& alpha);
std::string temp_predicate(const std::string& predicate);

/// σ(α) relative to the time variable `T`. For a count-variable atom the
/// result is the auxiliary count atom. Throws ValidationError on empty D.
FormulaPtr sigma(const StreamingAtom& alpha, const std::string& T, TimeVars& vars);

/// The auxiliary rules defining the count atom of `alpha`. `at_least`
/// renders `alpha.atom at least c in D` for the present rules; it defaults
/// to σ.
using AtLeastRenderer = std::function<FormulaPtr(const StreamingAtom&, const std::string&, TimeVars&)>;
std::vector<LarsRule> c_alpha_rules(const StreamingAtom& alpha, const AtLeastRenderer& at_least = {});

/// g for ρ4: offset 0 of a #temp head `a` is read from `a__temp`.
FormulaPtr g_translate(const StreamingLiteral& l, const LdsrProgram& program, const std::string& T,
                       TimeVars& vars);
/// g' for ρ5..ρ7: σ, with ¬ for negative literals.
FormulaPtr gprime_translate(const StreamingLiteral& l, const std::string& T, TimeVars& vars);
/// d_P(a(t)) as an LDSR-level disjunction, rendered through σ relative to T.
FormulaPtr d_P(const Atom& atom, const LdsrProgram& program, const std::string& T, TimeVars& vars);
/// g'' for ρ7: offset 0 of a #temp head is read from σ(d_P(a)).
FormulaPtr gdoubleprime_translate(const StreamingLiteral& l, const LdsrProgram& program,
                                  const std::string& T, TimeVars& vars);

LarsTranslation rho4(const LdsrProgram& program);
LarsTranslation rho5(const LdsrProgram& program);
LarsTranslation rho6(const LdsrProgram& program);
LarsTranslation rho7(const LdsrProgram& program);

/// Source fragment of ρk (ρ1 -> F1, ..., ρ7 -> F7).
Fragment rho_fragment(int rho);

}  // namespace sreason

#endif  // SREASON_TRANSPILE_HPP
