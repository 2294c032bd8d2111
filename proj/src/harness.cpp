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

#include "sreason/harness.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "sreason/transpile.hpp"

namespace sreason {

std::string to_string(Language l) { return l == Language::Ldsr ? "ldsr" : "lars"; }

std::string to_string(Profile p) {
  switch (p) {
    case Profile::Atomic: return "atomic";
    case Profile::Bound: return "bound";
    case Profile::Full: return "full";
  }
  return "?";
}

Profile parse_profile(const std::string& name) {
  if (name == "atomic") return Profile::Atomic;
  if (name == "bound") return Profile::Bound;
  if (name == "full") return Profile::Full;
  throw ValidationError("unknown profile '" + name + "' (expected atomic, bound or full)");
}

// {{{1 tuples and profiles

std::set<std::string> LTuple::predicates() const {
  std::set<std::string> out = std::visit([](const auto& p) { return p.predicates(); }, program);
  for (const auto& s : input.slots()) {
    for (const auto& a : s) out.insert(a.predicate);
  }
  for (const auto& a : background) out.insert(a.predicate);
  return out;
}

std::set<Constant> LTuple::default_domain() const {
  return std::visit([&](const auto& p) { return sreason::default_domain(p, input, background); }, program);
}

ProfileOutput profile_output(const LTuple& tuple, std::size_t t, Profile phi,
                             const std::optional<std::set<Constant>>& domain) {
  const std::size_t n = tuple.input.n();
  if (t > n) throw std::out_of_range("time point " + std::to_string(t) + " is after the stream end " + std::to_string(n));
  const auto dom = domain ? *domain : tuple.default_domain();
  ProfileOutput out{phi, t, Stream(n)};
  if (tuple.language() == Language::Ldsr) {
    const auto& p = std::get<LdsrProgram>(tuple.program);
    auto res = eval_answer_stream(p, restrict_to_time(tuple.input, t), tuple.background, dom);
    if (phi == Profile::Atomic) {
      out.stream[t] = res.streaming_model;
      return out;
    }
    for (std::size_t i = 0; i <= t; ++i) out.stream[i] = res.answer_stream[i];
    if (phi == Profile::Full) {
      for (std::size_t i = t + 1; i <= n; ++i) {
        out.stream[i] = tuple.input[i];
        out.stream[i].insert(tuple.background.begin(), tuple.background.end());
      }
    }
    return out;
  }
  const auto& p = std::get<LarsProgram>(tuple.program);
  auto as = eval_answer_stream_lars(p, tuple.input, tuple.background, t, dom);
  const std::size_t lo = phi == Profile::Atomic ? t : 0;
  const std::size_t hi = phi == Profile::Full ? n : t;
  for (std::size_t i = lo; i <= hi; ++i) {
    out.stream[i] = as.stream[i];
    out.stream[i].insert(tuple.background.begin(), tuple.background.end());
  }
  return out;
}

Verdict compare_streams(const Stream& left, const Stream& right) {
  Verdict v;
  const std::size_t len = std::max(left.size(), right.size());
  static const AtomSet kEmpty;
  for (std::size_t i = 0; i < len; ++i) {
    const AtomSet& l = i < left.size() ? left[i] : kEmpty;
    const AtomSet& r = i < right.size() ? right[i] : kEmpty;
    if (l == r) continue;
    StreamDiff d{i, {}, {}};
    std::set_difference(l.begin(), l.end(), r.begin(), r.end(), std::inserter(d.only_left, d.only_left.end()));
    std::set_difference(r.begin(), r.end(), l.begin(), l.end(), std::inserter(d.only_right, d.only_right.end()));
    v.equal = false;
    v.first_diff = std::move(d);
    return v;
  }
  return v;
}

Verdict check_expressibility(const LTuple& source, const LTuple& target, std::size_t t, Profile phi,
                             bool strict) {
  auto dom = source.default_domain();
  auto more = target.default_domain();
  dom.insert(more.begin(), more.end());
  Stream left = profile_output(source, t, phi, dom).stream;
  Stream right = profile_output(target, t, phi, dom).stream;
  if (!strict) {
    const auto preds = source.predicates();
    left = restrict_to_preds(left, preds);
    right = restrict_to_preds(right, preds);
  }
  Verdict v = compare_streams(left, right);
  v.filtered = !strict;
  return v;
}

Verdict prefix_independence(const LdsrProgram& program, const Stream& input, const AtomSet& background, std::size_t t,
                        const StreamMutator& mutator) {
  Stream changed = mutator(input, t);
  if (changed.n() != input.n()) throw ValidationError("mutator changed the stream length");
  for (std::size_t i = 0; i <= t && i <= input.n(); ++i) {
    if (changed[i] != input[i]) throw ValidationError("mutator changed slot " + std::to_string(i) + " <= t");
  }
  LTuple a{program, input, background};
  LTuple b{program, changed, background};
  auto dom = a.default_domain();
  auto more = b.default_domain();
  dom.insert(more.begin(), more.end());
  return compare_streams(profile_output(a, t, Profile::Bound, dom).stream,
                         profile_output(b, t, Profile::Bound, dom).stream);
}

// {{{1 generation

namespace {

struct PredInfo {
  std::string name;
  std::size_t arity = 0;
  PredicateKind kind = PredicateKind::StreamExtensional;
  /// Position among the intensional predicates; negation only looks down.
  std::size_t rank = 0;
};

class Gen {
 public:
  Gen(std::uint64_t seed, const GenBounds& b) : rng_(seed), b_(b) {}

  std::size_t upto(std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi)(rng_); }
  std::size_t between(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  std::int64_t between(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[upto(v.size() - 1)]; }

  /// Uses `decls` for every candidate instead of a random vocabulary.
  void fix_vocabulary(const std::vector<PredicateDecl>& decls) {
    preds_.clear();
    std::size_t rank = 0;
    for (const auto& d : decls) {
      const bool in = d.kind == PredicateKind::Intensional;
      preds_.push_back({d.name, d.arity, d.kind, in ? ++rank : 0});
    }
    constants_.clear();
    for (std::size_t i = 0; i < std::max<std::size_t>(1, b_.max_constants); ++i) {
      constants_.push_back(Constant::symbol("c" + std::to_string(i + 1)));
    }
    fixed_ = true;
  }

  /// Fresh vocabulary for one candidate.
  void vocabulary() {
    if (fixed_) return;
    preds_.clear();
    constants_.clear();
    const std::size_t total = std::max<std::size_t>(2, between(std::size_t{2}, b_.max_predicates));
    const std::size_t streams = std::min<std::size_t>(total - 1, between(std::size_t{1}, std::size_t{2}));
    const bool with_bg = total - streams >= 2 && chance(0.3);
    const std::size_t intens = total - streams - (with_bg ? 1 : 0);
    for (std::size_t i = 0; i < streams; ++i) {
      preds_.push_back({"s" + std::to_string(i + 1), arity(), PredicateKind::StreamExtensional, 0});
    }
    if (with_bg) preds_.push_back({"g1", arity(), PredicateKind::BackgroundExtensional, 0});
    for (std::size_t i = 0; i < intens; ++i) {
      preds_.push_back({"p" + std::to_string(i + 1), arity(), PredicateKind::Intensional, i + 1});
    }
    const std::size_t k = between(std::size_t{1}, b_.max_constants);
    for (std::size_t i = 0; i < k; ++i) constants_.push_back(Constant::symbol("c" + std::to_string(i + 1)));
  }

  std::vector<PredInfo> intensional() const {
    std::vector<PredInfo> out;
    for (const auto& p : preds_) {
      if (p.kind == PredicateKind::Intensional) out.push_back(p);
    }
    return out;
  }

  /// Predicates usable in a body of a rule with head rank `rank`;
  /// `strict` restricts to strictly lower intensional ones.
  std::vector<PredInfo> body_preds(std::size_t rank, bool strict, const std::set<std::string>& allowed_intens) const {
    std::vector<PredInfo> out;
    for (const auto& p : preds_) {
      if (p.kind != PredicateKind::Intensional) {
        out.push_back(p);
        continue;
      }
      if (allowed_intens.count(p.name) == 0) continue;
      if (strict && p.rank >= rank) continue;
      out.push_back(p);
    }
    return out;
  }

  std::string declarations() const {
    std::string out;
    for (const auto& p : preds_) {
      out += "#" + std::string(to_string(p.kind)) + " " + p.name + "/" + std::to_string(p.arity) + ".\n";
    }
    return out;
  }

  /// Renders p(args). Variables come from `vars`; `bound` restricts them.
  std::string atom(const PredInfo& p, const std::vector<std::string>* bound, std::set<std::string>* used) {
    static const std::vector<std::string> kVars{"X", "Y", "Z"};
    if (p.arity == 0) return p.name;
    std::string out = p.name + "(";
    for (std::size_t i = 0; i < p.arity; ++i) {
      if (i) out += ",";
      const bool var = chance(0.6) && (bound == nullptr || !bound->empty());
      if (var) {
        const std::string v = bound ? pick(*bound) : pick(kVars);
        if (used) used->insert(v);
        out += v;
      } else {
        out += pick(constants_).str();
      }
    }
    return out + ")";
  }

  std::set<std::int64_t> offsets() {
    std::set<std::int64_t> d;
    const std::size_t size = between(std::size_t{1}, std::size_t{3});
    while (d.size() < size) d.insert(between(std::int64_t{0}, b_.max_window));
    return d;
  }

  Stream stream(std::size_t n) {
    std::vector<PredInfo> sp;
    for (const auto& p : preds_) {
      if (p.kind == PredicateKind::StreamExtensional) sp.push_back(p);
    }
    std::vector<AtomSet> slots(n + 1);
    for (auto& s : slots) {
      const std::size_t k = upto(2);
      for (std::size_t i = 0; i < k && !sp.empty(); ++i) s.insert(ground(pick(sp)));
    }
    return Stream(std::move(slots));
  }

  AtomSet background() {
    AtomSet out;
    for (const auto& p : preds_) {
      if (p.kind != PredicateKind::BackgroundExtensional) continue;
      const std::size_t k = upto(2);
      for (std::size_t i = 0; i < k; ++i) out.insert(ground(p));
    }
    return out;
  }

  GroundAtom ground(const PredInfo& p) {
    GroundAtom a{p.name, {}};
    for (std::size_t i = 0; i < p.arity; ++i) a.args.push_back(pick(constants_));
    return a;
  }

  const GenBounds& bounds() const { return b_; }
  const std::vector<Constant>& constants() const { return constants_; }

 private:
  std::size_t arity() { return upto(b_.max_arity); }

  std::mt19937_64 rng_;
  GenBounds b_;
  std::vector<PredInfo> preds_;
  std::vector<Constant> constants_;
  bool fixed_ = false;
};

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out;
}

// {{{2 LARS candidates

enum class LarsMix { F1, F2, F3, Any };

std::string lars_beta(Gen& g, const PredInfo& p, bool negative, const std::vector<std::string>* bound,
                      std::set<std::string>* used) {
  const std::string a = g.atom(p, bound, used);
  const std::int64_t w = g.between(std::int64_t{0}, g.bounds().max_window);
  std::string f;
  switch (g.upto(3)) {
    case 0: f = a; break;
    case 1: f = "wplus[" + std::to_string(w) + "] diamond " + a; break;
    case 2: f = "wplus[" + std::to_string(w) + "] box " + a; break;
    default: {
      const std::string at = w == 0 ? "at[T] " : "at[T-" + std::to_string(w) + "] ";
      f = "wplus[0] at[T] true and " + at + a;
      if (negative) return "not (" + f + ")";
      return f;
    }
  }
  return negative ? "not " + f : f;
}

/// Items of one rule body; positives first so that negatives reuse their
/// variables.
std::vector<std::string> lars_items(Gen& g, const std::vector<PredInfo>& pos, const std::vector<PredInfo>& neg,
                                    std::vector<std::string>& vars) {
  std::vector<std::string> items;
  std::set<std::string> used;
  const std::size_t npos = g.upto(2) + (g.chance(0.85) ? 1 : 0);
  for (std::size_t i = 0; i < npos && !pos.empty(); ++i) items.push_back(lars_beta(g, g.pick(pos), false, nullptr, &used));
  vars.assign(used.begin(), used.end());
  const std::size_t nneg = g.upto(1);
  for (std::size_t i = 0; i < nneg && !neg.empty(); ++i) items.push_back(lars_beta(g, g.pick(neg), true, &vars, nullptr));
  return items;
}

std::string lars_candidate(Gen& g, LarsMix mix) {
  g.vocabulary();
  const auto intens = g.intensional();
  std::set<std::string> type1_heads, type2_heads, all;
  for (const auto& p : intens) {
    all.insert(p.name);
    (g.chance(0.5) ? type1_heads : type2_heads).insert(p.name);
  }
  if (mix == LarsMix::F3) {
    type2_heads = all;
    type1_heads.clear();
  }
  std::string text = g.declarations();
  const std::size_t rules = g.between(std::size_t{1}, g.bounds().max_rules);
  for (std::size_t r = 0; r < rules; ++r) {
    const PredInfo& head = g.pick(intens);
    bool type1 = mix == LarsMix::F3 ? false : mix == LarsMix::F2 ? type1_heads.count(head.name) != 0 : g.chance(0.5);
    // premises of type (I) rules avoid type (II) heads in F2
    const std::set<std::string>& allowed = (mix == LarsMix::F2 && type1) ? type1_heads : all;
    auto pos = g.body_preds(head.rank, false, allowed);
    auto neg = g.body_preds(head.rank, true, allowed);
    std::vector<std::string> vars;
    auto items = lars_items(g, pos, neg, vars);
    const std::string h = g.atom(head, &vars, nullptr);
    if (mix == LarsMix::Any && g.chance(0.15)) {
      // shapes outside the β templates
      switch (g.upto(2)) {
        case 0: text += "@[T-1] " + h + " <- @[T] " + g.atom(g.pick(pos), &vars, nullptr) + (items.empty() ? "" : ", " + join(items)) + ".\n"; break;
        case 1: text += h + " <- diamond " + g.atom(g.pick(pos), &vars, nullptr) + (items.empty() ? "" : ", " + join(items)) + ".\n"; break;
        default: text += h + " <- wplus[2] at[T] " + g.atom(g.pick(pos), &vars, nullptr) + (items.empty() ? "" : ", " + join(items)) + ".\n"; break;
      }
      continue;
    }
    if (type1) {
      text += "box(" + h + " <- " + (items.empty() ? "true" : join(items)) + ").\n";
    } else {
      text += h + (items.empty() ? "" : " <- " + join(items)) + ".\n";
    }
  }
  return text;
}

// {{{2 LDSR candidates

struct LdsrMix {
  bool all_temp = false;
  bool count_vars = true;
  bool split_heads = false;  // F7: #temp bodies avoid #temp heads
  /// Chance that a rule derives a stream predicate (outside F4).
  double extensional_heads = 0.0;
};

std::string ldsr_literal(Gen& g, const PredInfo& p, bool negative, bool allow_count, bool allow_count_var,
                         const std::vector<std::string>* bound, std::set<std::string>* used, bool& count_var_used) {
  const std::string a = g.atom(p, bound, used);
  auto d = g.offsets();
  const auto cap = std::min<std::int64_t>(g.bounds().max_count, static_cast<std::int64_t>(d.size()));
  std::string dset = "{";
  for (auto it = d.begin(); it != d.end(); ++it) dset += (it == d.begin() ? "" : ",") + std::to_string(*it);
  dset += "}";
  std::string f;
  const std::size_t kinds = allow_count ? 4 : 2;
  switch (g.upto(kinds)) {
    case 0: f = a; break;
    case 1: f = a + " at least " + std::to_string(g.between(std::int64_t{1}, cap)) + " in " + dset; break;
    case 2: f = a + " always in " + dset; break;
    case 3: f = a + " count " + std::to_string(g.between(std::int64_t{1}, cap)) + " in " + dset; break;
    default:
      if (allow_count_var && !negative && !count_var_used) {
        count_var_used = true;
        if (used) used->insert("C");
        f = a + " count C in " + dset;
      } else {
        f = a + " at least 1 in " + dset;
      }
  }
  return negative ? "not " + f : f;
}

std::string ldsr_candidate(Gen& g, LdsrMix mix) {
  g.vocabulary();
  const auto intens = g.intensional();
  std::set<std::string> temp_heads, perm_heads, all;
  for (const auto& p : intens) {
    all.insert(p.name);
    if (mix.all_temp) {
      temp_heads.insert(p.name);
    } else {
      (g.chance(0.5) ? temp_heads : perm_heads).insert(p.name);
    }
  }
  std::string text = g.declarations();
  const std::size_t rules = g.between(std::size_t{1}, g.bounds().max_rules);
  for (std::size_t r = 0; r < rules; ++r) {
    std::vector<PredInfo> streams;
    for (const auto& p : g.body_preds(0, true, {})) {
      if (p.kind == PredicateKind::StreamExtensional) streams.push_back(p);
    }
    const bool ext = mix.extensional_heads > 0 && !streams.empty() && g.chance(mix.extensional_heads);
    const PredInfo& head = ext ? g.pick(streams) : g.pick(intens);
    bool temp = mix.all_temp || (temp_heads.count(head.name) != 0 && g.chance(0.8));
    std::set<std::string> allowed = all;
    if (mix.split_heads && temp) {
      for (const auto& h : temp_heads) allowed.erase(h);
    }
    auto pos = g.body_preds(head.rank, false, allowed);
    auto strict = g.body_preds(head.rank, true, allowed);
    std::set<std::string> used;
    std::vector<std::string> lits;
    bool count_var_used = false;
    // count literals are strict dependencies, so they draw from `strict`
    const std::size_t npos = g.upto(2) + (g.chance(0.85) ? 1 : 0);
    for (std::size_t i = 0; i < npos; ++i) {
      const bool count_ok = !strict.empty() && g.chance(0.4);
      const auto& pool = count_ok ? strict : pos;
      if (pool.empty()) continue;
      lits.push_back(ldsr_literal(g, g.pick(pool), false, count_ok, count_ok && mix.count_vars, nullptr, &used,
                                  count_var_used));
    }
    std::vector<std::string> vars(used.begin(), used.end());
    const std::size_t nneg = g.upto(1);
    for (std::size_t i = 0; i < nneg && !strict.empty(); ++i) {
      lits.push_back(ldsr_literal(g, g.pick(strict), true, g.chance(0.3), false, &vars, nullptr, count_var_used));
    }
    std::string h = g.atom(head, &vars, nullptr);
    text += (temp ? "#temp " : "") + h + (lits.empty() ? "" : " :- " + join(lits)) + ".\n";
  }
  return text;
}

bool accepts(Fragment f, const FragmentVerdict& v) { return v.member(f); }

}  // namespace

Instance gen_fragment_instance(Fragment fragment, std::uint64_t seed, const GenBounds& bounds) {
  Gen g(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(fragment), bounds);
  Instance inst;
  inst.fragment = fragment;
  inst.seed = seed;
  for (std::size_t attempt = 1; attempt <= bounds.max_attempts; ++attempt) {
    try {
      if (is_lars_fragment(fragment)) {
        const LarsMix mix = fragment == Fragment::F1 ? (g.chance(0.5) ? LarsMix::F1 : LarsMix::F2)
                            : fragment == Fragment::F2 ? LarsMix::F2
                                                       : LarsMix::F3;
        auto p = parse_lars(lars_candidate(g, mix));
        if (!accepts(fragment, classify_lars_fragments(p))) continue;
        negation_strata(p);
        inst.program = std::move(p);
      } else {
        LdsrMix mix;
        mix.all_temp = fragment == Fragment::F5 || fragment == Fragment::F6;
        mix.count_vars = fragment == Fragment::F4 || fragment == Fragment::F5;
        mix.split_heads = fragment == Fragment::F7;
        auto p = parse_ldsr(ldsr_candidate(g, mix));
        if (!accepts(fragment, classify_ldsr_fragments(p))) continue;
        check_stratified(p);
        inst.program = std::move(p);
      }
    } catch (const Error&) {
      continue;
    }
    inst.input = g.stream(g.upto(bounds.max_n));
    inst.background = g.background();
    inst.attempts = attempt;
    return inst;
  }
  throw Error("no " + to_string(fragment) + " instance after " + std::to_string(bounds.max_attempts) +
              " attempts (seed " + std::to_string(seed) + ", acceptance rate 0)");
}

Instance gen_any_instance(Language language, std::uint64_t seed, const GenBounds& bounds) {
  Gen g(seed * 0xD1B54A32D192ED03ULL + (language == Language::Lars ? 1 : 2), bounds);
  Instance inst;
  inst.seed = seed;
  for (std::size_t attempt = 1; attempt <= bounds.max_attempts; ++attempt) {
    try {
      if (language == Language::Lars) {
        auto p = parse_lars(lars_candidate(g, LarsMix::Any));
        negation_strata(p);
        inst.program = std::move(p);
      } else {
        LdsrMix mix;
        mix.all_temp = g.chance(0.3);
        mix.count_vars = g.chance(0.7);
        mix.split_heads = g.chance(0.3);
        mix.extensional_heads = g.chance(0.2) ? 0.3 : 0.0;
        auto p = parse_ldsr(ldsr_candidate(g, mix));
        check_stratified(p);
        inst.program = std::move(p);
      }
    } catch (const Error&) {
      continue;
    }
    inst.input = g.stream(g.upto(bounds.max_n));
    inst.background = g.background();
    inst.attempts = attempt;
    return inst;
  }
  throw Error("no " + to_string(language) + " instance after " + std::to_string(bounds.max_attempts) + " attempts");
}

LdsrProgram gen_ldsr_program(const std::vector<PredicateDecl>& vocabulary, std::uint64_t seed,
                             const GenBounds& bounds) {
  Gen g(seed * 0xA0761D6478BD642FULL + 3, bounds);
  g.fix_vocabulary(vocabulary);
  for (std::size_t attempt = 1; attempt <= bounds.max_attempts; ++attempt) {
    try {
      LdsrMix mix;
      mix.all_temp = g.chance(0.3);
      mix.count_vars = g.chance(0.7);
      auto p = parse_ldsr(ldsr_candidate(g, mix));
      check_stratified(p);
      return p;
    } catch (const Error&) {
    }
  }
  throw Error("no LDSR program over the given vocabulary after " + std::to_string(bounds.max_attempts) + " attempts");
}

Stream mutate_after(const Stream& input, std::size_t t, const std::set<std::string>& stream_preds,
                    const std::vector<Constant>& constants, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stream out = input;
  std::map<std::string, std::size_t> arity;
  for (const auto& s : input.slots()) {
    for (const auto& a : s) arity[a.predicate] = a.args.size();
  }
  std::vector<std::string> preds(stream_preds.begin(), stream_preds.end());
  for (std::size_t i = t + 1; i <= input.n(); ++i) {
    out[i].clear();
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t j = 0; j < k && !preds.empty() && !constants.empty(); ++j) {
      const auto& p = preds[std::uniform_int_distribution<std::size_t>(0, preds.size() - 1)(rng)];
      GroundAtom a{p, {}};
      const std::size_t ar = arity.count(p) ? arity[p] : 0;
      for (std::size_t x = 0; x < ar; ++x) {
        a.args.push_back(constants[std::uniform_int_distribution<std::size_t>(0, constants.size() - 1)(rng)]);
      }
      out[i].insert(std::move(a));
    }
  }
  return out;
}

// {{{1 campaigns

namespace {

bool within(Fragment a, Fragment b) {
  if (a == b) return true;
  switch (b) {
    case Fragment::F1: return a == Fragment::F2 || a == Fragment::F3;
    case Fragment::F2: return a == Fragment::F3;
    case Fragment::F4: return a == Fragment::F5 || a == Fragment::F6 || a == Fragment::F7;
    case Fragment::F5: return a == Fragment::F6;
    default: return false;
  }
}

}  // namespace

RhoGuarantee rho_guarantee(int rho) {
  switch (rho) {
    case 1: return {Profile::Atomic, true};
    case 2: return {Profile::Bound, true};
    case 3: return {Profile::Full, true};
    case 4: return {Profile::Bound, false};
    case 5: return {Profile::Full, false};
    case 6: return {Profile::Full, true};
    case 7: return {Profile::Bound, true};
    default: throw ValidationError("rho must be in 1..7");
  }
}

std::optional<std::string> campaign_config_error(const CampaignConfig& c) {
  if (c.rho < 1 || c.rho > 7) return "rho must be in 1..7";
  const Fragment home = rho_fragment(c.rho);
  if (!within(c.fragment, home)) {
    return "rho" + std::to_string(c.rho) + " is defined on " + to_string(home) + ", not on " + to_string(c.fragment);
  }
  const RhoGuarantee row = rho_guarantee(c.rho);
  if (static_cast<int>(c.profile) > static_cast<int>(row.max_profile)) {
    return to_string(c.fragment) + " via rho" + std::to_string(c.rho) + " is not " + to_string(c.profile) +
           "-expressible according to the expressibility tables";
  }
  if (c.strict && !row.strict) {
    return "rho" + std::to_string(c.rho) + " is not strict; use the filtered comparison";
  }
  return std::nullopt;
}

LTuple translate_tuple(const LTuple& source, int rho) {
  LTuple out{source.program, source.input, source.background};
  if (rho >= 1 && rho <= 3) {
    const auto& p = std::get<LarsProgram>(source.program);
    out.program = (rho == 1 ? rho1(p) : rho == 2 ? rho2(p) : rho3(p)).program;
    return out;
  }
  const auto& p = std::get<LdsrProgram>(source.program);
  switch (rho) {
    case 4: out.program = rho4(p).program; break;
    case 5: out.program = rho5(p).program; break;
    case 6: out.program = rho6(p).program; break;
    case 7: out.program = rho7(p).program; break;
    default: throw ValidationError("unknown translation rho" + std::to_string(rho));
  }
  return out;
}

TrialRecord run_trial(const CampaignConfig& config, std::uint64_t seed) {
  TrialRecord rec;
  rec.seed = seed;
  try {
    const Instance inst = gen_fragment_instance(config.fragment, seed, config.bounds);
    rec.n = inst.input.n();
    const LTuple src = inst.tuple();
    const LTuple dst = translate_tuple(src, config.rho);
    for (std::size_t t = 0; t <= rec.n; ++t) {
      Verdict v = check_expressibility(src, dst, t, config.profile, config.strict);
      if (!v.equal) {
        rec.passed = false;
        rec.t = t;
        rec.verdict = std::move(v);
        return rec;
      }
      rec.verdict = std::move(v);
    }
  } catch (const std::exception& e) {
    rec.passed = false;
    rec.error = e.what();
  }
  return rec;
}

CampaignReport differential_campaign(const CampaignConfig& config) {
  if (auto err = campaign_config_error(config)) throw ValidationError(*err);
  CampaignReport report;
  report.config = config;
  report.trials.resize(config.trials);
  std::vector<std::size_t> attempts(config.trials, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      const std::uint64_t seed = config.seed + i;
      report.trials[i] = run_trial(config, seed);
      try {
        attempts[i] = gen_fragment_instance(config.fragment, seed, config.bounds).attempts;
      } catch (const Error&) {
        attempts[i] = config.bounds.max_attempts;
      }
    }
  };
  const std::size_t nthreads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < config.trials; ++i) {
    if (report.trials[i].passed) ++report.passes;
    report.attempts += attempts[i];
    if (report.trials[i].error.rfind("no ", 0) != 0) ++report.generated;
  }
  return report;
}

}  // namespace sreason
