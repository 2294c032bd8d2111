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
#include <optional>
#include <unordered_map>

#include "sreason/lars.hpp"

namespace sreason {

namespace {

using Env = std::map<std::string, Constant>;
using Callback = std::function<bool(const Env&)>;

// {{{1 variable analysis

/// Sorts and scopes of the variables of one rule (or one formula).
struct Analysis {
  std::set<std::string> time_vars;
  std::unordered_map<const Formula*, std::vector<std::string>> free;
  std::unordered_map<const Formula*, std::set<std::string>> owned;
};

void count_terms(const Formula& f, std::map<std::string, int>& counts) {
  auto add = [&](const Term& t) {
    if (t.is_variable()) ++counts[t.var];
  };
  for (const auto& t : f.atom.args) add(t);
  if (f.op == FormulaOp::At) add(f.time);
  if (f.op == FormulaOp::Cmp) {
    add(f.lhs);
    add(f.rhs);
  }
}

std::map<std::string, int> scope(const Formula& f, const std::map<std::string, int>& total, Analysis& a) {
  std::map<std::string, int> inside;
  count_terms(f, inside);
  std::set<std::string> fv;
  for (const auto& [v, n] : inside) {
    (void)n;
    fv.insert(v);
  }
  for (const auto& k : f.kids) {
    auto sub = scope(*k, total, a);
    for (const auto& [v, n] : sub) inside[v] += n;
    const auto& kf = a.free[k.get()];
    fv.insert(kf.begin(), kf.end());
  }
  if (f.op == FormulaOp::Not) {
    std::set<std::string> owned;
    fv.clear();
    for (const auto& [v, n] : inside) {
      if (n == total.at(v)) {
        owned.insert(v);
      } else {
        fv.insert(v);
      }
    }
    a.owned[&f] = std::move(owned);
  }
  a.free[&f] = std::vector<std::string>(fv.begin(), fv.end());
  return inside;
}

Analysis analyze(const std::vector<const Formula*>& roots) {
  Analysis a;
  std::map<std::string, int> total;
  std::vector<const Formula*> cmps;
  std::function<void(const Formula&)> walk = [&](const Formula& f) {
    count_terms(f, total);
    if (f.op == FormulaOp::At && f.time.is_variable()) a.time_vars.insert(f.time.var);
    if (f.op == FormulaOp::Cmp) cmps.push_back(&f);
    for (const auto& k : f.kids) walk(*k);
  };
  for (const auto* r : roots) walk(*r);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto* c : cmps) {
      bool l = c->lhs.is_variable(), r = c->rhs.is_variable();
      bool lt = l && a.time_vars.count(c->lhs.var) != 0;
      bool rt = r && a.time_vars.count(c->rhs.var) != 0;
      if (lt && r && !rt) changed |= a.time_vars.insert(c->rhs.var).second;
      if (rt && l && !lt) changed |= a.time_vars.insert(c->lhs.var).second;
    }
  }
  for (const auto* r : roots) scope(*r, total, a);
  return a;
}

// {{{1 solver

struct Frame {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t t = 0;

  bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
};

std::optional<Constant> value_of(const Term& term, const Env& env) {
  if (!term.is_variable()) return term.value;
  auto it = env.find(term.var);
  if (it == env.end()) return std::nullopt;
  if (term.offset == 0) return it->second;
  if (!it->second.is_number()) return std::nullopt;
  return Constant::number(it->second.as_number() + term.offset);
}

bool is_unbound_var(const Term& term, const Env& env) {
  return term.is_variable() && env.count(term.var) == 0;
}

/// Solves formulas against one stream. Every environment passed to the
/// callback makes the formula true for all extensions of it; every total
/// satisfying assignment extends one of them.
class Solver {
 public:
  Solver(const Stream& sigma, const AtomSet& background, const Analysis& analysis,
         const std::set<Constant>& domain)
      : sigma_(sigma),
        background_(background),
        a_(analysis),
        domain_(domain),
        last_(static_cast<std::int64_t>(sigma.n())) {}

  std::int64_t last() const { return last_; }

  bool exists(const Formula& f, const Env& env, Frame fr) {
    bool found = false;
    solve(f, env, fr, [&](const Env&) {
      found = true;
      return false;
    });
    return found;
  }

  /// Conjunction of `kids` (a rule body or an And node).
  bool solve_all(const std::vector<const Formula*>& kids, const Env& env, Frame fr, const Callback& cb) {
    std::vector<bool> done(kids.size(), false);
    return conj(kids, done, kids.size(), env, fr, cb);
  }

  /// Enumerates `var` over its sort.
  bool enumerate(const std::string& var, const Env& env, const Callback& cb) {
    Env e = env;
    if (a_.time_vars.count(var) != 0) {
      for (std::int64_t x = 0; x <= last_; ++x) {
        e[var] = Constant::number(x);
        if (!cb(e)) return false;
      }
      return true;
    }
    for (const auto& c : domain_) {
      e[var] = c;
      if (!cb(e)) return false;
    }
    return true;
  }

  /// Binds `var` (with offset) to `target` if the value fits the sort.
  bool bind(const Term& term, const Constant& target, Env& env) const {
    Constant v = target;
    if (term.offset != 0) {
      if (!target.is_number()) return false;
      v = Constant::number(target.as_number() - term.offset);
    }
    if (a_.time_vars.count(term.var) != 0) {
      if (!v.is_number() || v.as_number() < 0 || v.as_number() > last_) return false;
    } else if (domain_.count(v) == 0) {
      return false;
    }
    env[term.var] = v;
    return true;
  }

  bool solve(const Formula& f, const Env& env, Frame fr, const Callback& cb) {
    switch (f.op) {
      case FormulaOp::True:
        return cb(env);
      case FormulaOp::Atom:
        return atom(f, env, fr, cb);
      case FormulaOp::Not:
        if (auto v = first_unbound(f, env)) return enumerate(*v, env, [&](const Env& e) { return solve(f, e, fr, cb); });
        return exists(*f.kids[0], env, fr) ? true : cb(env);
      case FormulaOp::And: {
        std::vector<const Formula*> kids;
        for (const auto& k : f.kids) kids.push_back(k.get());
        return solve_all(kids, env, fr, cb);
      }
      case FormulaOp::Or:
        for (const auto& k : f.kids) {
          if (!solve(*k, env, fr, cb)) return false;
        }
        return true;
      case FormulaOp::Implies:
        if (auto v = first_unbound(f, env)) return enumerate(*v, env, [&](const Env& e) { return solve(f, e, fr, cb); });
        if (!exists(*f.kids[0], env, fr) || exists(*f.kids[1], env, fr)) return cb(env);
        return true;
      case FormulaOp::Diamond:
        for (std::int64_t x = fr.lo; x <= fr.hi; ++x) {
          if (!solve(*f.kids[0], env, Frame{fr.lo, fr.hi, x}, cb)) return false;
        }
        return true;
      case FormulaOp::Box:
        if (auto v = first_unbound(f, env)) return enumerate(*v, env, [&](const Env& e) { return solve(f, e, fr, cb); });
        for (std::int64_t x = fr.lo; x <= fr.hi; ++x) {
          if (!exists(*f.kids[0], env, Frame{fr.lo, fr.hi, x})) return true;
        }
        return cb(env);
      case FormulaOp::At: {
        if (is_unbound_var(f.time, env)) {
          for (std::int64_t x = fr.lo; x <= fr.hi; ++x) {
            Env e = env;
            if (!bind(f.time, Constant::number(x), e)) continue;
            if (!solve(*f.kids[0], e, Frame{fr.lo, fr.hi, x}, cb)) return false;
          }
          return true;
        }
        auto v = value_of(f.time, env);
        if (!v || !v->is_number() || !fr.contains(v->as_number())) return true;
        return solve(*f.kids[0], env, Frame{fr.lo, fr.hi, v->as_number()}, cb);
      }
      case FormulaOp::Window:
        return solve(*f.kids[0], env, Frame{std::max(fr.lo, fr.t - f.width), std::min(fr.hi, fr.t), fr.t}, cb);
      case FormulaOp::Reset:
        return solve(*f.kids[0], env, Frame{0, last_, fr.t}, cb);
      case FormulaOp::Cmp:
        return cmp(f, env, fr, cb);
    }
    return true;
  }

 private:
  std::optional<std::string> first_unbound(const Formula& f, const Env& env) const {
    for (const auto& v : a_.free.at(&f)) {
      if (env.count(v) == 0) return v;
    }
    return std::nullopt;
  }

  bool atom(const Formula& f, const Env& env, Frame fr, const Callback& cb) {
    const Atom& pattern = f.atom;
    bool ground = std::none_of(pattern.args.begin(), pattern.args.end(),
                               [&](const Term& t) { return is_unbound_var(t, env); });
    if (ground) {
      GroundAtom g{pattern.predicate, {}};
      for (const auto& t : pattern.args) {
        auto v = value_of(t, env);
        if (!v) return true;
        g.args.push_back(*v);
      }
      bool holds = (fr.contains(fr.t) && sigma_.contains(static_cast<std::size_t>(fr.t), g)) ||
                   background_.count(g) != 0;
      return holds ? cb(env) : true;
    }
    std::vector<GroundAtom> candidates;
    auto collect = [&](const GroundAtom& g) { candidates.push_back(g); };
    if (fr.contains(fr.t)) for_each_with_predicate(sigma_[static_cast<std::size_t>(fr.t)], pattern.predicate, collect);
    for_each_with_predicate(background_, pattern.predicate, collect);
    for (const auto& g : candidates) {
      if (g.args.size() != pattern.args.size()) continue;
      Env e = env;
      bool ok = true;
      for (std::size_t i = 0; i < g.args.size() && ok; ++i) {
        const Term& t = pattern.args[i];
        if (is_unbound_var(t, e)) {
          ok = bind(t, g.args[i], e);
        } else {
          auto v = value_of(t, e);
          ok = v && *v == g.args[i];
        }
      }
      if (ok && !cb(e)) return false;
    }
    return true;
  }

  bool cmp(const Formula& f, const Env& env, Frame fr, const Callback& cb) {
    auto lv = value_of(f.lhs, env);
    auto rv = value_of(f.rhs, env);
    if (lv && rv) {
      bool equal = *lv == *rv;
      return (f.cmp == CmpOp::Eq) == equal ? cb(env) : true;
    }
    if (f.cmp == CmpOp::Eq && (lv || rv)) {
      const Term& open = lv ? f.rhs : f.lhs;
      if (is_unbound_var(open, env)) {
        Env e = env;
        if (bind(open, lv ? *lv : *rv, e)) return cb(e);
        return true;
      }
      return true;  // bound but ill-typed side
    }
    if (auto v = first_unbound(f, env)) return enumerate(*v, env, [&](const Env& e) { return solve(f, e, fr, cb); });
    return true;
  }

  bool can_generate(const Formula& f, const Env& env) const {
    switch (f.op) {
      case FormulaOp::Atom:
        return true;
      case FormulaOp::Cmp:
        return f.cmp == CmpOp::Eq && (is_unbound_var(f.lhs, env) != is_unbound_var(f.rhs, env));
      case FormulaOp::At:
        return is_unbound_var(f.time, env) || can_generate(*f.kids[0], env);
      case FormulaOp::Diamond:
      case FormulaOp::Window:
      case FormulaOp::Reset:
        return can_generate(*f.kids[0], env);
      case FormulaOp::And:
        return std::any_of(f.kids.begin(), f.kids.end(), [&](const FormulaPtr& k) { return can_generate(*k, env); });
      case FormulaOp::Or:
        return std::all_of(f.kids.begin(), f.kids.end(), [&](const FormulaPtr& k) { return can_generate(*k, env); });
      default:
        return false;
    }
  }

  int generator_rank(const Formula& f) const {
    switch (f.op) {
      case FormulaOp::Cmp: return 0;
      case FormulaOp::Atom: return 1;
      default: return 2;
    }
  }

  bool conj(const std::vector<const Formula*>& kids, std::vector<bool>& done, std::size_t left, const Env& env,
            Frame fr, const Callback& cb) {
    if (left == 0) return cb(env);
    auto ready = [&](const Formula& k) { return !first_unbound(k, env).has_value(); };
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < kids.size() && !pick; ++i) {
      if (!done[i] && ready(*kids[i])) pick = i;
    }
    if (pick) {
      if (!exists(*kids[*pick], env, fr)) return true;
      done[*pick] = true;
      bool go = conj(kids, done, left - 1, env, fr, cb);
      done[*pick] = false;
      return go;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (done[i] || !can_generate(*kids[i], env)) continue;
      if (!pick || generator_rank(*kids[i]) < generator_rank(*kids[*pick])) pick = i;
    }
    if (pick) {
      done[*pick] = true;
      bool go = solve(*kids[*pick], env, fr, [&](const Env& e) { return conj(kids, done, left - 1, e, fr, cb); });
      done[*pick] = false;
      return go;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (done[i]) continue;
      auto v = first_unbound(*kids[i], env);
      return enumerate(*v, env, [&](const Env& e) { return conj(kids, done, left, e, fr, cb); });
    }
    return true;
  }

  const Stream& sigma_;
  const AtomSet& background_;
  const Analysis& a_;
  const std::set<Constant>& domain_;
  std::int64_t last_;
};

std::set<Constant> stream_constants(const Stream& sigma, const AtomSet& background) {
  std::set<Constant> out;
  for (const auto& slot : sigma.slots()) {
    for (const auto& g : slot) out.insert(g.args.begin(), g.args.end());
  }
  for (const auto& g : background) out.insert(g.args.begin(), g.args.end());
  return out;
}

// {{{1 prepared rules

/// A rule with private node identities and its variable analysis.
struct PreparedRule {
  LarsRule rule;
  Analysis analysis;
  std::vector<const Formula*> body;

  explicit PreparedRule(const LarsRule& r) {
    rule.head = clone(r.head);
    for (const auto& b : r.body) rule.body.push_back(clone(b));
    std::vector<const Formula*> roots{rule.head.get()};
    for (const auto& b : rule.body) {
      roots.push_back(b.get());
      body.push_back(b.get());
    }
    analysis = analyze(roots);
  }

  /// Rule-level variables: everything not owned by a negation.
  std::set<std::string> rule_variables() const {
    std::set<std::string> out;
    auto add = [&](const Formula* f) {
      const auto& fv = analysis.free.at(f);
      out.insert(fv.begin(), fv.end());
    };
    add(rule.head.get());
    for (const auto* b : body) add(b);
    return out;
  }
};

/// Calls `emit(slot, atom)` for every head instance whose body holds in
/// `sigma` at `t`. The caller decides what to do with out-of-range slots.
void fire(const PreparedRule& pr, const Stream& sigma, const AtomSet& background, std::int64_t t,
          const std::set<Constant>& domain, const std::function<void(std::int64_t, const GroundAtom&)>& emit) {
  Solver solver(sigma, background, pr.analysis, domain);
  const Formula& head = *pr.rule.head;
  std::int64_t last = solver.last();

  auto instantiate = [&](const Atom& pattern, const Env& env, const std::function<void(const Env&)>& done) {
    std::vector<std::string> open;
    for (const auto& arg : pattern.args) {
      if (is_unbound_var(arg, env) && std::find(open.begin(), open.end(), arg.var) == open.end()) {
        open.push_back(arg.var);
      }
    }
    std::function<void(std::size_t, const Env&)> rec = [&](std::size_t i, const Env& e) {
      if (i == open.size()) {
        done(e);
        return;
      }
      solver.enumerate(open[i], e, [&](const Env& next) {
        rec(i + 1, next);
        return true;
      });
    };
    rec(0, env);
  };
  auto ground = [](const Atom& pattern, const Env& env) -> std::optional<GroundAtom> {
    GroundAtom g{pattern.predicate, {}};
    for (const auto& t : pattern.args) {
      auto v = value_of(t, env);
      if (!v) return std::nullopt;
      g.args.push_back(*v);
    }
    return g;
  };

  if (head.op == FormulaOp::Box) {
    const Formula& imp = *head.kids[0];
    const Atom& h = imp.kids[1]->atom;
    for (std::int64_t x = 0; x <= last; ++x) {
      solver.solve(*imp.kids[0], Env{}, Frame{0, last, x}, [&](const Env& env) {
        instantiate(h, env, [&](const Env& e) {
          if (auto g = ground(h, e)) emit(x, *g);
        });
        return true;
      });
    }
    return;
  }
  const Atom& h = pr.rule.head_atom();
  solver.solve_all(pr.body, Env{}, Frame{0, last, t}, [&](const Env& env) {
    if (head.op == FormulaOp::Atom) {
      instantiate(h, env, [&](const Env& e) {
        if (auto g = ground(h, e)) emit(t, *g);
      });
      return true;
    }
    // @-head: the time term may still be open.
    auto with_time = [&](const Env& env2) {
      auto tv = value_of(head.time, env2);
      if (!tv || !tv->is_number()) return true;
      instantiate(h, env2, [&](const Env& e) {
        if (auto g = ground(h, e)) emit(tv->as_number(), *g);
      });
      return true;
    };
    if (is_unbound_var(head.time, env)) return solver.enumerate(head.time.var, env, with_time);
    return with_time(env);
  });
}

}  // namespace

// {{{1 public entry points

std::set<Constant> default_domain(const LarsProgram& program, const Stream& input, const AtomSet& background) {
  std::set<Constant> out = program.constants();
  auto more = stream_constants(input, background);
  out.insert(more.begin(), more.end());
  return out;
}

bool eval_formula_exists(const Stream& sigma, const AtomSet& background, Interval interval, std::int64_t t,
                         const FormulaPtr& phi, const std::set<Constant>& domain) {
  FormulaPtr f = clone(phi);
  Analysis a = analyze({f.get()});
  std::set<Constant> dom = domain.empty() ? stream_constants(sigma, background) : domain;
  Solver solver(sigma, background, a, dom);
  return solver.exists(*f, Env{}, Frame{interval.lo, interval.hi, t});
}

bool eval_formula(const Stream& sigma, const AtomSet& background, Interval interval, std::int64_t t,
                  const FormulaPtr& phi, const std::set<Constant>& domain) {
  FormulaPtr f = clone(phi);
  Analysis a = analyze({f.get()});
  const auto& fv = a.free.at(f.get());
  if (!fv.empty()) throw ValidationError("formula has free variable " + fv.front() + ": " + phi->str());
  std::set<Constant> dom = domain.empty() ? stream_constants(sigma, background) : domain;
  Solver solver(sigma, background, a, dom);
  return solver.exists(*f, Env{}, Frame{interval.lo, interval.hi, t});
}

LarsAnswerStream eval_answer_stream_lars(const LarsProgram& program, const Stream& input,
                                         const AtomSet& background, std::size_t t,
                                         const std::optional<std::set<Constant>>& domain) {
  if (t > input.n()) throw std::out_of_range("evaluation time point beyond the stream");
  auto strata = negation_strata(program);
  std::set<Constant> dom = domain ? *domain : default_domain(program, input, background);
  std::vector<PreparedRule> prepared;
  prepared.reserve(program.rules.size());
  for (const auto& r : program.rules) prepared.emplace_back(r);

  Stream sigma = input;
  const auto last = static_cast<std::int64_t>(input.n());
  for (const auto& stratum : strata) {
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::pair<std::size_t, GroundAtom>> fresh;
      for (std::size_t ri : stratum) {
        fire(prepared[ri], sigma, background, static_cast<std::int64_t>(t), dom,
             [&](std::int64_t slot, const GroundAtom& g) {
               if (slot < 0 || slot > last) return;
               auto s = static_cast<std::size_t>(slot);
               if (sigma.contains(s, g)) return;
               if (!program.signature.is_intensional(g.predicate)) {
                 throw NoAnswerStream("rule derives extensional atom " + g.str() + " at " +
                                      std::to_string(slot) + " which is not in the input");
               }
               fresh.emplace_back(s, g);
             });
      }
      for (auto& [s, g] : fresh) {
        if (!sigma.contains(s, g)) {
          sigma.insert(s, std::move(g));
          changed = true;
        }
      }
    }
  }
  return LarsAnswerStream{std::move(sigma), t};
}

std::vector<GroundLarsRule> ground_lars(const LarsProgram& program, const std::set<Constant>& domain,
                                        const std::set<std::int64_t>& timepoints) {
  constexpr std::size_t kMaxInstances = 2'000'000;
  std::vector<GroundLarsRule> out;
  for (const auto& r : program.rules) {
    PreparedRule pr(r);
    auto rule_vars = pr.rule_variables();
    std::vector<std::string> vars(rule_vars.begin(), rule_vars.end());
    std::size_t combos = 1;
    for (const auto& v : vars) {
      std::size_t k = pr.analysis.time_vars.count(v) != 0 ? timepoints.size() : domain.size();
      if (k != 0 && combos > kMaxInstances / k) throw InstanceTooLarge("grounding of " + r.str() + " is too large");
      combos *= k;
    }
    // Anchor variable of a top-level ⊞⁰@_T⊤ conjunct.
    std::optional<std::string> anchor_var;
    for (const auto& b : r.body) {
      if (b->op == FormulaOp::Window && b->width == 0 && b->kids[0]->op == FormulaOp::At &&
          b->kids[0]->time.is_variable() && b->kids[0]->time.offset == 0 &&
          b->kids[0]->kids[0]->op == FormulaOp::True) {
        anchor_var = b->kids[0]->time.var;
        break;
      }
    }
    Env env;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == vars.size()) {
        std::map<std::string, Constant> sub(env.begin(), env.end());
        auto apply = [&](const FormulaPtr& f) {
          std::function<FormulaPtr(const FormulaPtr&)> go = [&](const FormulaPtr& g) {
            auto n = std::make_shared<Formula>(*g);
            auto fix = [&](Term& t) {
              if (!t.is_variable()) return;
              auto it = sub.find(t.var);
              if (it == sub.end()) return;
              if (t.offset == 0) {
                t = Term::constant(it->second);
              } else if (it->second.is_number()) {
                t = Term::number(it->second.as_number() + t.offset);
              }
            };
            for (auto& a : n->atom.args) fix(a);
            if (n->op == FormulaOp::At) fix(n->time);
            if (n->op == FormulaOp::Cmp) {
              fix(n->lhs);
              fix(n->rhs);
            }
            for (auto& k : n->kids) k = go(k);
            return FormulaPtr(n);
          };
          return go(f);
        };
        GroundLarsRule g;
        g.rule.head = apply(r.head);
        for (const auto& b : r.body) g.rule.body.push_back(apply(b));
        if (g.rule.head->op == FormulaOp::At) {
          const Term& ht = g.rule.head->time;
          if (!ht.is_variable() &&
              (!ht.value.is_number() || timepoints.count(ht.value.as_number()) == 0)) {
            return;
          }
        }
        if (anchor_var) {
          auto it = env.find(*anchor_var);
          if (it != env.end() && it->second.is_number()) g.anchor = it->second.as_number();
        }
        out.push_back(std::move(g));
        return;
      }
      const std::string& v = vars[i];
      if (pr.analysis.time_vars.count(v) != 0) {
        for (auto x : timepoints) {
          env[v] = Constant::number(x);
          rec(i + 1);
        }
      } else {
        for (const auto& c : domain) {
          env[v] = c;
          rec(i + 1);
        }
      }
      env.erase(v);
    };
    rec(0);
  }
  return out;
}

AnswerCheck verify_answer_stream(const LarsProgram& program, const Stream& input, const AtomSet& background,
                                 std::size_t t, const Stream& candidate,
                                 const std::optional<std::set<Constant>>& domain, std::size_t max_derived) {
  if (candidate.n() != input.n()) return {false, "candidate and input differ in length"};
  if (t > input.n()) return {false, "evaluation time point beyond the stream"};
  if (!input.subset_of(candidate)) return {false, "candidate does not contain the input"};
  std::vector<std::pair<std::size_t, GroundAtom>> derived;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    for (const auto& g : candidate[i]) {
      if (input.contains(i, g)) continue;
      if (!program.signature.is_intensional(g.predicate)) {
        return {false, "atom " + g.str() + " at " + std::to_string(i) + " is not in the input and not intensional"};
      }
      derived.emplace_back(i, g);
    }
  }
  if (derived.size() > max_derived) {
    throw InstanceTooLarge("too many derived atoms for the minimality check: " + std::to_string(derived.size()));
  }
  std::set<Constant> dom = domain ? *domain : default_domain(program, input, background);
  std::set<std::int64_t> times;
  for (std::int64_t x = 0; x <= static_cast<std::int64_t>(input.n()); ++x) times.insert(x);

  struct Checked {
    LarsRule rule;
    FormulaPtr body;
  };
  std::vector<Checked> rules;
  for (auto& g : ground_lars(program, dom, times)) {
    FormulaPtr body = lf::conj(g.rule.body);
    rules.push_back(Checked{std::move(g.rule), std::move(body)});
  }
  const Interval all{0, static_cast<std::int64_t>(input.n())};
  const auto at = static_cast<std::int64_t>(t);
  auto holds = [&](const Stream& s, const FormulaPtr& f) { return eval_formula(s, background, all, at, f, dom); };

  std::vector<std::size_t> reduct;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!holds(candidate, rules[i].body)) continue;
    if (!holds(candidate, rules[i].rule.head)) {
      return {false, "candidate is not a model of " + rules[i].rule.str()};
    }
    reduct.push_back(i);
  }
  const std::size_t subsets = std::size_t{1} << derived.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    Stream smaller = candidate;
    for (std::size_t k = 0; k < derived.size(); ++k) {
      if ((mask >> k & 1U) != 0) smaller[derived[k].first].erase(derived[k].second);
    }
    bool model = std::all_of(reduct.begin(), reduct.end(), [&](std::size_t i) {
      return !holds(smaller, rules[i].body) || holds(smaller, rules[i].rule.head);
    });
    if (model) {
      std::string removed;
      for (std::size_t k = 0; k < derived.size(); ++k) {
        if ((mask >> k & 1U) != 0) removed += " " + derived[k].second.str() + "@" + std::to_string(derived[k].first);
      }
      return {false, "a smaller model of the reduct exists without" + removed};
    }
  }
  return {true, ""};
}

}  // namespace sreason
