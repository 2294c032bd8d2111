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

#include <algorithm>
#include <functional>
#include <map>

#include "sreason/ldsr.hpp"
#include "syntax_util.hpp"

namespace sreason {

namespace {

using Binding = std::map<std::string, Constant>;

std::optional<Constant> resolve(const Term& t, const Binding& b) {
  if (!t.is_variable()) return t.value;
  auto it = b.find(t.var);
  if (it == b.end()) return std::nullopt;
  return it->second;
}

std::optional<GroundAtom> resolve(const Atom& a, const Binding& b) {
  GroundAtom g{a.predicate, {}};
  g.args.reserve(a.args.size());
  for (const auto& t : a.args) {
    auto c = resolve(t, b);
    if (!c) return std::nullopt;
    g.args.push_back(std::move(*c));
  }
  return g;
}

bool match(const Atom& pattern, const GroundAtom& atom, Binding& b) {
  if (pattern.predicate != atom.predicate || pattern.args.size() != atom.args.size()) return false;
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    const Term& t = pattern.args[i];
    if (!t.is_variable()) {
      if (!(t.value == atom.args[i])) return false;
      continue;
    }
    auto [it, inserted] = b.emplace(t.var, atom.args[i]);
    if (!inserted && !(it->second == atom.args[i])) return false;
  }
  return true;
}

bool holds(const Stream& sigma, StreamingKind kind, const GroundAtom& atom, std::int64_t bound,
           const std::set<std::int64_t>& offsets) {
  auto c = count_in_observation(sigma, atom, offsets);
  switch (kind) {
    case StreamingKind::AtLeast: return static_cast<std::int64_t>(c.hits) >= bound;
    case StreamingKind::AlwaysIn: return c.hits == c.members;
    case StreamingKind::Count: return static_cast<std::int64_t>(c.hits) == bound;
  }
  return false;
}

bool observation_empty(const Stream& sigma, const std::set<std::int64_t>& offsets) {
  return offsets.empty() || *offsets.begin() > static_cast<std::int64_t>(sigma.n());
}

/// Enumerates the ground instances of one rule whose body holds on `sigma`
/// (last slot = time point under evaluation).
class RuleSolver {
 public:
  RuleSolver(const Stream& sigma, const std::set<Constant>& domain) : sigma_(sigma), domain_(domain) {}

  void solve(const LdsrRule& rule, const std::function<void(const Binding&)>& fn) {
    rule_ = &rule;
    fn_ = &fn;
    count_vars_.clear();
    for (const auto& l : rule.body) {
      if (l.atom.has_count_variable()) count_vars_.insert(l.atom.bound.var);
    }
    std::vector<bool> done(rule.body.size(), false);
    Binding b;
    step(b, done);
  }

 private:
  // Ground instances only exist for domain values, and counting terms only
  // take positive numbers.
  bool admissible(const Binding& b) const {
    for (const auto& [v, c] : b) {
      if (domain_.count(c) == 0) return false;
      if (count_vars_.count(v) != 0 && (!c.is_number() || c.as_number() < 1)) return false;
    }
    return true;
  }

  bool ground_literal_holds(const StreamingLiteral& l, const GroundAtom& atom, const Constant& bound) {
    if (!bound.is_number()) return false;
    bool v = holds(sigma_, l.atom.kind, atom, bound.as_number(), l.atom.offsets);
    return v != l.negative;
  }

  void step(const Binding& b, std::vector<bool> done) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = 0; i < done.size(); ++i) {
        if (done[i]) continue;
        const auto& l = rule_->body[i];
        auto atom = resolve(l.atom.atom, b);
        if (!atom) continue;
        auto bound = resolve(l.atom.bound, b);
        if (!bound) continue;
        if (!ground_literal_holds(l, *atom, *bound)) return;
        done[i] = true;
        progress = true;
      }
    }
    std::size_t pick = done.size();
    for (std::size_t i = 0; i < done.size(); ++i) {
      if (done[i] || rule_->body[i].negative) continue;
      if (pick == done.size()) pick = i;
      const auto& l = rule_->body[i];
      // A count literal whose atom is ground only needs its variable bound.
      if (resolve(l.atom.atom, b)) {
        pick = i;
        break;
      }
      if (l.atom.kind != StreamingKind::AlwaysIn && rule_->body[pick].atom.kind == StreamingKind::AlwaysIn) {
        pick = i;
      }
    }
    if (pick == done.size()) {
      for (std::size_t i = 0; i < done.size(); ++i) {
        if (!done[i]) {
          throw ValidationError("unsafe rule `" + rule_->str() + "`: literal " +
                                rule_->body[i].str() + " cannot be grounded");
        }
      }
      if (admissible(b)) (*fn_)(b);
      return;
    }

    const auto& l = rule_->body[pick];
    if (auto atom = resolve(l.atom.atom, b)) {
      // Bind the counting variable to the observed count.
      auto c = count_in_observation(sigma_, *atom, l.atom.offsets);
      if (c.hits == 0) return;
      Binding next = b;
      next[l.atom.bound.var] = Constant::number(static_cast<std::int64_t>(c.hits));
      if (!admissible(next)) return;
      step(next, done);
      return;
    }

    if (l.atom.kind == StreamingKind::AlwaysIn && observation_empty(sigma_, l.atom.offsets)) {
      // Vacuously true: the free variables range over the whole domain.
      std::string var;
      for (const auto& t : l.atom.atom.args) {
        if (t.is_variable() && b.count(t.var) == 0) {
          var = t.var;
          break;
        }
      }
      for (const auto& c : domain_) {
        Binding next = b;
        next[var] = c;
        step(next, done);
      }
      return;
    }

    // Generate bindings from the atoms observed in the window.
    const auto n = static_cast<std::int64_t>(sigma_.n());
    std::set<Binding> seen;
    for (auto d : l.atom.offsets) {
      auto idx = n - d;
      if (idx < 0) continue;
      for_each_with_predicate(sigma_[static_cast<std::size_t>(idx)], l.atom.atom.predicate,
                              [&](const GroundAtom& g) {
                                Binding next = b;
                                if (match(l.atom.atom, g, next)) seen.insert(std::move(next));
                              });
      // Always-in needs the atom in every member, so one member suffices.
      if (l.atom.kind == StreamingKind::AlwaysIn) break;
    }
    for (const auto& next : seen) {
      if (admissible(next)) step(next, done);
    }
  }

  const Stream& sigma_;
  const std::set<Constant>& domain_;
  const LdsrRule* rule_ = nullptr;
  const std::function<void(const Binding&)>* fn_ = nullptr;
  std::set<std::string> count_vars_;
};

Atom substitute(const Atom& a, const Binding& b) {
  Atom out{a.predicate, {}};
  for (const auto& t : a.args) {
    auto c = resolve(t, b);
    out.args.push_back(c ? Term::constant(*c) : t);
  }
  return out;
}

LdsrRule substitute(const LdsrRule& r, const Binding& b) {
  LdsrRule out;
  out.form = r.form;
  out.head = substitute(r.head, b);
  for (const auto& l : r.body) {
    StreamingLiteral g = l;
    g.atom.atom = substitute(l.atom.atom, b);
    if (auto c = resolve(l.atom.bound, b)) g.atom.bound = Term::constant(*c);
    out.body.push_back(std::move(g));
  }
  return out;
}

bool body_holds(const Stream& sigma, const LdsrRule& ground_rule) {
  for (const auto& l : ground_rule.body) {
    if (!entails(sigma, l)) return false;
  }
  return true;
}

Stream prefix_with(const Stream& done, std::size_t i, const AtomSet& last) {
  std::vector<AtomSet> slots(done.slots().begin(), done.slots().begin() + static_cast<long>(i));
  slots.push_back(last);
  return Stream(std::move(slots));
}

AtomSet slot_base(const Stream& input, std::size_t i, const AtomSet& background) {
  AtomSet s = input[i];
  s.insert(background.begin(), background.end());
  return s;
}

}  // namespace

void check_input_kinds(const Signature& signature, const Stream& input, const AtomSet& background) {
  for (std::size_t i = 0; i < input.size(); ++i) {
    for (const auto& a : input[i]) {
      if (signature.is_intensional(a.predicate)) {
        throw ValidationError("input atom " + a.str() + " at time " + std::to_string(i) +
                              " has an intensional predicate");
      }
      signature.check_arity(a.predicate, a.args.size());
    }
  }
  for (const auto& a : background) {
    if (signature.is_intensional(a.predicate)) {
      throw ValidationError("background atom " + a.str() + " has an intensional predicate");
    }
    signature.check_arity(a.predicate, a.args.size());
  }
}

std::set<Constant> default_domain(const LdsrProgram& program, const Stream& input,
                                  const AtomSet& background) {
  std::set<Constant> out = program.constants();
  for (const auto& slot : input.slots()) {
    for (const auto& a : slot) out.insert(a.args.begin(), a.args.end());
  }
  for (const auto& a : background) out.insert(a.args.begin(), a.args.end());
  for (std::size_t k = 1; k <= program.max_count_window(); ++k) {
    out.insert(Constant::number(static_cast<std::int64_t>(k)));
  }
  return out;
}

bool entails(const Stream& sigma, const StreamingLiteral& literal) {
  const auto& a = literal.atom;
  if (!a.is_ground()) throw ValidationError("entailment needs a ground literal: " + literal.str());
  if (a.offsets.empty()) throw ValidationError("streaming atom with an empty offset set");
  std::int64_t bound = 1;
  if (a.kind != StreamingKind::AlwaysIn) {
    if (!a.bound.value.is_number()) return literal.negative;
    bound = a.bound.value.as_number();
  }
  return holds(sigma, a.kind, a.atom.ground(), bound, a.offsets) != literal.negative;
}

LdsrProgram ground_ldsr(const LdsrProgram& program, const std::set<Constant>& domain) {
  LdsrProgram out;
  out.signature = program.signature;
  for (const auto& r : program.rules) {
    std::set<std::string> count_vars;
    std::map<std::string, std::size_t> cap;
    for (const auto& l : r.body) {
      if (!l.atom.has_count_variable()) continue;
      count_vars.insert(l.atom.bound.var);
      if (!l.negative) {
        auto [it, inserted] = cap.emplace(l.atom.bound.var, l.atom.offsets.size());
        if (!inserted) it->second = std::min(it->second, l.atom.offsets.size());
      }
    }
    const auto rule_vars = r.variables();
    std::vector<std::string> vars(rule_vars.begin(), rule_vars.end());
    std::vector<std::vector<Constant>> ranges;
    for (const auto& v : vars) {
      std::vector<Constant> range;
      for (const auto& c : domain) {
        if (count_vars.count(v) != 0) {
          if (!c.is_number() || c.as_number() < 1) continue;
          auto it = cap.find(v);
          if (it != cap.end() && c.as_number() > static_cast<std::int64_t>(it->second)) continue;
        }
        range.push_back(c);
      }
      ranges.push_back(std::move(range));
    }
    Binding b;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == vars.size()) {
        out.rules.push_back(substitute(r, b));
        return;
      }
      for (const auto& c : ranges[k]) {
        b[vars[k]] = c;
        rec(k + 1);
      }
      b.erase(vars[k]);
    };
    rec(0);
  }
  return out;
}

LdsrEvalResult eval_answer_stream(const LdsrProgram& program, const Stream& input,
                                  const AtomSet& background,
                                  const std::optional<std::set<Constant>>& domain) {
  check_input_kinds(program.signature, input, background);
  auto strata = check_stratified(program);
  const std::set<Constant> dom = domain ? *domain : default_domain(program, input, background);
  const std::size_t n = input.n();

  LdsrEvalResult res;
  res.answer_stream = Stream(n);
  res.temp_trace.assign(n + 1, AtomSet{});
  for (std::size_t i = 0; i <= n; ++i) {
    Stream cur = prefix_with(res.answer_stream, i, slot_base(input, i, background));
    RuleSolver solver(cur, dom);
    for (const auto& stratum : strata) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto ri : stratum) {
          const auto& rule = program.rules[ri];
          std::vector<GroundAtom> heads;
          solver.solve(rule, [&](const Binding& b) { heads.push_back(*resolve(rule.head, b)); });
          for (auto& h : heads) {
            if (cur[i].insert(std::move(h)).second) changed = true;
          }
        }
      }
    }
    if (i < n) {
      AtomSet permanent = slot_base(input, i, background);
      for (const auto& rule : program.rules) {
        if (rule.is_temp()) continue;
        solver.solve(rule, [&](const Binding& b) { permanent.insert(*resolve(rule.head, b)); });
      }
      for (const auto& a : cur[i]) {
        if (permanent.count(a) != 0) {
          res.answer_stream[i].insert(a);
        } else {
          res.temp_trace[i].insert(a);
        }
      }
    } else {
      res.answer_stream[i] = cur[i];
    }
  }
  res.streaming_model = res.answer_stream[n];
  return res;
}

LdsrEvalResult brute_force_answer_stream(const LdsrProgram& program, const Stream& input,
                                         const AtomSet& background,
                                         const std::optional<std::set<Constant>>& domain,
                                         std::size_t max_candidates) {
  check_input_kinds(program.signature, input, background);
  const std::set<Constant> dom = domain ? *domain : default_domain(program, input, background);
  LdsrProgram with_facts = program;
  for (const auto& b : background) {
    LdsrRule fact;
    fact.head.predicate = b.predicate;
    for (const auto& c : b.args) fact.head.args.push_back(Term::constant(c));
    with_facts.rules.push_back(std::move(fact));
  }
  const LdsrProgram gr = ground_ldsr(with_facts, dom);
  const std::size_t n = input.n();

  LdsrEvalResult res;
  res.answer_stream = Stream(n);
  res.temp_trace.assign(n + 1, AtomSet{});
  for (std::size_t i = 0; i <= n; ++i) {
    const AtomSet& base = input[i];
    AtomSet cand_set;
    for (const auto& r : gr.rules) {
      auto h = r.head.ground();
      if (base.count(h) == 0) cand_set.insert(std::move(h));
    }
    std::vector<GroundAtom> cand(cand_set.begin(), cand_set.end());
    if (cand.size() > max_candidates) {
      throw InstanceTooLarge("time point " + std::to_string(i) + " has " + std::to_string(cand.size()) +
                             " candidate atoms (limit " + std::to_string(max_candidates) + ")");
    }
    const std::uint64_t full = (std::uint64_t{1} << cand.size()) - 1;
    auto stream_for = [&](std::uint64_t mask) {
      AtomSet s = base;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if ((mask >> k) & 1U) s.insert(cand[k]);
      }
      return prefix_with(res.answer_stream, i, s);
    };
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      Stream m = stream_for(mask);
      std::vector<const LdsrRule*> reduct;
      bool model = true;
      for (const auto& r : gr.rules) {
        if (!body_holds(m, r)) continue;
        if (!m.contains(i, r.head.ground())) {
          model = false;
          break;
        }
        reduct.push_back(&r);
      }
      if (!model) continue;
      bool is_minimal = true;
      for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
        if (sub == mask) break;
        Stream o = stream_for(sub);
        bool sub_model = true;
        for (const auto* r : reduct) {
          if (body_holds(o, *r) && !o.contains(i, r->head.ground())) {
            sub_model = false;
            break;
          }
        }
        if (sub_model) {
          is_minimal = false;
          break;
        }
        if (sub == 0) break;
      }
      if (is_minimal) minimal.push_back(mask);
    }
    if (minimal.size() != 1) {
      throw Error("time point " + std::to_string(i) + " has " + std::to_string(minimal.size()) +
                  " minimal models of the reduct");
    }
    Stream m = stream_for(minimal.front());
    if (i < n) {
      AtomSet permanent = base;
      for (const auto& r : gr.rules) {
        if (r.is_temp()) continue;
        auto h = r.head.ground();
        if (body_holds(m, r) && m.contains(i, h)) permanent.insert(h);
      }
      for (const auto& a : m[i]) {
        if (permanent.count(a) != 0) {
          res.answer_stream[i].insert(a);
        } else {
          res.temp_trace[i].insert(a);
        }
      }
    } else {
      res.answer_stream[i] = m[i];
    }
  }
  res.streaming_model = res.answer_stream[n];
  return res;
}

}  // namespace sreason
