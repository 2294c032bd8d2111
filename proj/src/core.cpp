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

#include "sreason/core.hpp"

#include <cctype>
#include <sstream>

namespace sreason {

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  bool first = true;
  for (const auto& d : diagnostics) {
    if (!first) out << '\n';
    first = false;
    out << d.line << ':' << d.column << ": " << d.message;
  }
  return out.str();
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::string Constant::str() const {
  if (is_number()) return std::to_string(as_number());
  return as_symbol();
}

std::string Term::str() const {
  if (!is_variable()) return value.str();
  if (offset == 0) return var;
  if (offset > 0) return var + "+" + std::to_string(offset);
  return var + "-" + std::to_string(-offset);
}

std::string GroundAtom::str() const {
  std::string out = predicate;
  if (args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i != 0) out += ',';
    out += args[i].str();
  }
  out += ')';
  return out;
}

bool Atom::is_ground() const {
  for (const auto& t : args) {
    if (t.is_variable()) return false;
  }
  return true;
}

GroundAtom Atom::ground() const {
  GroundAtom g{predicate, {}};
  g.args.reserve(args.size());
  for (const auto& t : args) {
    if (t.is_variable()) throw ValidationError("atom " + str() + " is not ground");
    g.args.push_back(t.value);
  }
  return g;
}

std::string Atom::str() const {
  std::string out = predicate;
  if (args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i != 0) out += ',';
    out += args[i].str();
  }
  out += ')';
  return out;
}

std::ostream& operator<<(std::ostream& os, const Constant& c) { return os << c.str(); }
std::ostream& operator<<(std::ostream& os, const GroundAtom& a) { return os << a.str(); }

std::string to_string(const AtomSet& atoms) {
  std::string out;
  for (const auto& a : atoms) {
    if (!out.empty()) out += ' ';
    out += a.str();
  }
  return out;
}

std::string_view to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::StreamExtensional: return "stream";
    case PredicateKind::BackgroundExtensional: return "background";
    case PredicateKind::Intensional: return "intensional";
  }
  return "?";
}

void Signature::declare(const PredicateDecl& decl) {
  auto it = decls_.find(decl.name);
  if (it != decls_.end() && explicit_.count(decl.name) != 0 && !(it->second == decl)) {
    throw ValidationError("conflicting declaration for predicate " + decl.name);
  }
  if (it != decls_.end() && it->second.arity != decl.arity) {
    throw ValidationError("arity clash for predicate " + decl.name + ": " +
                          std::to_string(it->second.arity) + " vs " + std::to_string(decl.arity));
  }
  decls_[decl.name] = decl;
  explicit_.insert(decl.name);
}

void Signature::ensure(const std::string& name, std::size_t arity, PredicateKind kind) {
  auto it = decls_.find(name);
  if (it == decls_.end()) {
    decls_.emplace(name, PredicateDecl{name, kind, arity});
    return;
  }
  if (it->second.arity != arity) {
    throw ValidationError("arity clash for predicate " + name + ": " +
                          std::to_string(it->second.arity) + " vs " + std::to_string(arity));
  }
}

void Signature::check_arity(const std::string& name, std::size_t arity) const {
  auto it = decls_.find(name);
  if (it != decls_.end() && it->second.arity != arity) {
    throw ValidationError("arity clash for predicate " + name + ": " +
                          std::to_string(it->second.arity) + " vs " + std::to_string(arity));
  }
}

const PredicateDecl* Signature::find(const std::string& name) const {
  auto it = decls_.find(name);
  return it == decls_.end() ? nullptr : &it->second;
}

PredicateKind Signature::kind_of(const std::string& name) const {
  const auto* d = find(name);
  if (d == nullptr) throw ValidationError("unknown predicate " + name);
  return d->kind;
}

bool Signature::is_intensional(const std::string& name) const {
  const auto* d = find(name);
  return d != nullptr && d->kind == PredicateKind::Intensional;
}

void Signature::merge(const Signature& other) {
  for (const auto& [name, decl] : other.decls_) {
    if (other.explicit_.count(name) != 0) {
      declare(decl);
    } else {
      ensure(name, decl.arity, decl.kind);
    }
  }
}

std::string FreshNames::take(const std::string& base) {
  if (used_.insert(base).second) return base;
  return numbered(base);
}

std::string FreshNames::numbered(const std::string& base) {
  for (std::size_t k = 1;; ++k) {
    std::string name = base + std::to_string(k);
    if (used_.insert(name).second) return name;
  }
}

bool is_variable_name(std::string_view name) {
  return !name.empty() && (std::isupper(static_cast<unsigned char>(name[0])) != 0);
}

}  // namespace sreason
