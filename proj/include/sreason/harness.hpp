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

// Output profiles, expressibility checks and differential campaigns.

#ifndef SREASON_HARNESS_HPP
#define SREASON_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sreason/fragments.hpp"
#include "sreason/lars.hpp"
#include "sreason/ldsr.hpp"
#include "sreason/stream.hpp"

namespace sreason {

enum class Language { Ldsr, Lars };
enum class Profile { Atomic, Bound, Full };

std::string to_string(Language l);
std::string to_string(Profile p);
/// Throws ValidationError on an unknown name.
Profile parse_profile(const std::string& name);

/// (I, B, P) for one of the two languages.
struct LTuple {
  std::variant<LdsrProgram, LarsProgram> program;
  Stream input;
  AtomSet background;

  Language language() const { return program.index() == 0 ? Language::Ldsr : Language::Lars; }
  std::set<std::string> predicates() const;
  std::set<Constant> default_domain() const;
};

struct ProfileOutput {
  Profile profile = Profile::Atomic;
  std::size_t t = 0;
  Stream stream;
};

/// Throws std::out_of_range when t > n. `domain` defaults to the tuple's
/// own default domain.
ProfileOutput profile_output(const LTuple& tuple, std::size_t t, Profile phi,
                             const std::optional<std::set<Constant>>& domain = std::nullopt);

struct StreamDiff {
  std::size_t time = 0;
  AtomSet only_left;
  AtomSet only_right;
};

struct Verdict {
  bool equal = true;
  std::optional<StreamDiff> first_diff;
  bool filtered = false;
};

Verdict compare_streams(const Stream& left, const Stream& right);

/// Compares the φ-outputs of both tuples over one shared domain. When
/// `strict` is false both outputs are restricted to pred(P ∪ I ∪ B) of the
/// source first.
Verdict check_expressibility(const LTuple& source, const LTuple& target, std::size_t t, Profile phi,
                             bool strict);

using StreamMutator = std::function<Stream(const Stream&, std::size_t t)>;

/// Bound-profile equality between I and mutator(I). Throws ValidationError
/// when the mutator touches a slot <= t or changes the length.
Verdict prefix_independence(const LdsrProgram& program, const Stream& input, const AtomSet& background,
                        std::size_t t, const StreamMutator& mutator);

// {{{1 generation

struct GenBounds {
  std::size_t max_n = 8;
  std::size_t max_constants = 4;
  std::size_t max_predicates = 5;
  std::size_t max_arity = 2;
  std::size_t max_rules = 6;
  std::int64_t max_window = 3;
  std::int64_t max_count = 2;
  /// Rejection-sampling budget per instance.
  std::size_t max_attempts = 1000;
};

struct Instance {
  Fragment fragment = Fragment::F1;
  std::uint64_t seed = 0;
  std::variant<LdsrProgram, LarsProgram> program;
  Stream input;
  AtomSet background;
  /// Candidates drawn until the classifier accepted one.
  std::size_t attempts = 0;

  LTuple tuple() const { return {program, input, background}; }
};

/// Deterministic per seed. Throws Error when the budget is exhausted.
Instance gen_fragment_instance(Fragment fragment, std::uint64_t seed, const GenBounds& bounds = {});

/// Random LARS (any shape mix) or LDSR program with a stream, for
/// properties that are not tied to one fragment.
Instance gen_any_instance(Language language, std::uint64_t seed, const GenBounds& bounds = {});

/// Random stratified LDSR program over a fixed vocabulary. Needs at least
/// one intensional predicate.
LdsrProgram gen_ldsr_program(const std::vector<PredicateDecl>& vocabulary, std::uint64_t seed,
                             const GenBounds& bounds = {});

/// Random mutation of the slots after t, keeping the length.
Stream mutate_after(const Stream& input, std::size_t t, const std::set<std::string>& stream_preds,
                    const std::vector<Constant>& constants, std::uint64_t seed);

// {{{1 campaigns

struct CampaignConfig {
  Fragment fragment = Fragment::F1;
  int rho = 1;
  Profile profile = Profile::Atomic;
  bool strict = true;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  GenBounds bounds;
};

/// Largest profile under which ρk is known to preserve outputs, and whether
/// that holds without filtering auxiliary predicates.
struct RhoGuarantee {
  Profile max_profile = Profile::Atomic;
  bool strict = true;
};
/// Throws ValidationError outside 1..7.
RhoGuarantee rho_guarantee(int rho);

/// Empty when the configuration is backed by the expressibility tables,
/// otherwise the reason it is not.
std::optional<std::string> campaign_config_error(const CampaignConfig& config);

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  bool passed = true;
  /// First failing time point, if any.
  std::optional<std::size_t> t;
  Verdict verdict;
  /// Set when a trial raised an error instead of producing outputs.
  std::string error;
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t passes = 0;
  std::size_t generated = 0;
  std::size_t attempts = 0;
  std::vector<TrialRecord> trials;

  bool ok() const { return passes == trials.size(); }
  double acceptance_rate() const { return attempts ? static_cast<double>(generated) / static_cast<double>(attempts) : 0.0; }
};

/// Throws ValidationError for a configuration rejected by
/// campaign_config_error. Trials run in parallel; the report is ordered by
/// seed.
CampaignReport differential_campaign(const CampaignConfig& config);

/// Replays one trial of a campaign.
TrialRecord run_trial(const CampaignConfig& config, std::uint64_t seed);

/// Translation of the tuple's program by ρk, as a tuple over the same I, B.
LTuple translate_tuple(const LTuple& source, int rho);

}  // namespace sreason

#endif  // SREASON_HARNESS_HPP
