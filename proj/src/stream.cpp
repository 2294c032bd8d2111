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

#include "sreason/stream.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "sreason/lexer.hpp"

namespace sreason {

Stream::Stream(std::vector<AtomSet> slots) : slots_(std::move(slots)) {
  if (slots_.empty()) slots_.resize(1);
}

bool Stream::subset_of(const Stream& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!std::includes(other.slots_[i].begin(), other.slots_[i].end(), slots_[i].begin(),
                       slots_[i].end())) {
      return false;
    }
  }
  return true;
}

std::set<std::string> Stream::predicates() const {
  std::set<std::string> out;
  for (const auto& slot : slots_) {
    for (const auto& a : slot) out.insert(a.predicate);
  }
  return out;
}

std::size_t Stream::atom_count() const {
  std::size_t k = 0;
  for (const auto& slot : slots_) k += slot.size();
  return k;
}

std::vector<std::size_t> ObservationSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.first);
  return out;
}

Stream restrict_to_time(const Stream& sigma, std::size_t m) {
  if (m > sigma.n()) {
    throw std::out_of_range("restriction point " + std::to_string(m) + " beyond last time point " +
                            std::to_string(sigma.n()));
  }
  std::vector<AtomSet> slots(sigma.slots().begin(), sigma.slots().begin() + static_cast<long>(m) + 1);
  return Stream(std::move(slots));
}

Stream restrict_to_preds(const Stream& sigma, const std::set<std::string>& preds) {
  Stream out(sigma.n());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    for (const auto& a : sigma[i]) {
      if (preds.count(a.predicate) != 0) out.insert(i, a);
    }
  }
  return out;
}

ObservationSet backward_observation(const Stream& sigma, const std::set<std::int64_t>& offsets) {
  if (offsets.empty()) throw ValidationError("backward observation needs a nonempty offset set");
  ObservationSet obs;
  const auto n = static_cast<std::int64_t>(sigma.n());
  for (std::int64_t d : offsets) {
    std::int64_t i = n - d;
    if (d < 0 || i < 0) continue;
    obs.members.emplace_back(static_cast<std::size_t>(i), sigma[static_cast<std::size_t>(i)]);
  }
  return obs;
}

Substream time_window(const Stream& sigma, std::size_t t, std::size_t w) {
  if (t > sigma.n()) {
    throw std::out_of_range("window point " + std::to_string(t) + " beyond last time point " +
                            std::to_string(sigma.n()));
  }
  Substream sub;
  sub.interval.lo = t >= w ? static_cast<std::int64_t>(t - w) : 0;
  sub.interval.hi = static_cast<std::int64_t>(t);
  sub.stream = Stream(sigma.n());
  for (auto i = sub.interval.lo; i <= sub.interval.hi; ++i) {
    sub.stream[static_cast<std::size_t>(i)] = sigma[static_cast<std::size_t>(i)];
  }
  return sub;
}

ObservationCount count_in_observation(const Stream& sigma, const GroundAtom& atom,
                                      const std::set<std::int64_t>& offsets) {
  ObservationCount c;
  const auto n = static_cast<std::int64_t>(sigma.n());
  for (std::int64_t d : offsets) {
    std::int64_t i = n - d;
    if (d < 0 || i < 0) continue;
    ++c.members;
    if (sigma.contains(static_cast<std::size_t>(i), atom)) ++c.hits;
  }
  return c;
}

void for_each_with_predicate(const AtomSet& slot, const std::string& predicate,
                             const std::function<void(const GroundAtom&)>& fn) {
  GroundAtom probe{predicate, {}};
  for (auto it = slot.lower_bound(probe); it != slot.end() && it->predicate == predicate; ++it) {
    fn(*it);
  }
}

// {{{1 text formats

namespace {

GroundAtom parse_atom_tokens(TokenCursor& cur) {
  const Token& name = cur.expect(TokenKind::Identifier, "predicate name");
  GroundAtom atom{name.text, {}};
  if (cur.accept(TokenKind::LParen)) {
    do {
      if (cur.at(TokenKind::Number)) {
        atom.args.push_back(Constant::number(cur.advance().number));
      } else if (cur.at(TokenKind::Identifier)) {
        atom.args.push_back(Constant::symbol(cur.advance().text));
      } else {
        cur.fail("expected a constant");
      }
    } while (cur.accept(TokenKind::Comma));
    cur.expect(TokenKind::RParen, "')'");
  }
  return atom;
}

template <typename Fn>
auto with_diagnostics(Fn&& fn) {
  try {
    return fn();
  } catch (const SyntaxIssue& issue) {
    throw ParseError({issue.diagnostic});
  }
}

}  // namespace

GroundAtom parse_ground_atom(std::string_view text) {
  return with_diagnostics([&] {
    TokenCursor cur(tokenize(text));
    GroundAtom a = parse_atom_tokens(cur);
    if (!cur.done()) cur.fail("trailing input after atom");
    return a;
  });
}

AtomSet parse_atom_set(std::string_view text) {
  return with_diagnostics([&] {
    TokenCursor cur(tokenize(text));
    AtomSet out;
    while (!cur.done()) {
      out.insert(parse_atom_tokens(cur));
      cur.accept(TokenKind::Period);
      cur.accept(TokenKind::Comma);
    }
    return out;
  });
}

Stream parse_stream_text(std::string_view text) {
  return with_diagnostics([&] {
    TokenCursor cur(tokenize(text));
    std::map<std::size_t, AtomSet> slots;
    std::size_t last = 0;
    while (!cur.done()) {
      const Token& idx = cur.expect(TokenKind::Number, "time point");
      cur.expect(TokenKind::Colon, "':'");
      auto i = static_cast<std::size_t>(idx.number);
      if (slots.count(i) != 0) {
        throw SyntaxIssue{Diagnostic{idx.line, idx.column, "time point " + idx.text + " given twice"}};
      }
      auto& slot = slots[i];
      last = std::max(last, i);
      int line = idx.line;
      while (cur.at(TokenKind::Identifier) && cur.peek().line == line) {
        slot.insert(parse_atom_tokens(cur));
        cur.accept(TokenKind::Comma);
      }
    }
    Stream sigma(last);
    for (auto& [i, atoms] : slots) sigma[i] = std::move(atoms);
    return sigma;
  });
}

std::string print_stream_text(const Stream& sigma) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    out << i << ':';
    for (const auto& a : sigma[i]) out << ' ' << a.str();
    out << '\n';
  }
  return out.str();
}

std::string print_stream_json(const Stream& sigma) {
  nlohmann::json j;
  j["n"] = sigma.n();
  j["slots"] = nlohmann::json::array();
  for (const auto& slot : sigma.slots()) {
    auto arr = nlohmann::json::array();
    for (const auto& a : slot) arr.push_back(a.str());
    j["slots"].push_back(std::move(arr));
  }
  return j.dump();
}

Stream parse_stream_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError({Diagnostic{0, 0, e.what()}});
  }
  if (!j.is_object() || !j.contains("slots") || !j["slots"].is_array()) {
    throw ParseError({Diagnostic{0, 0, "structured stream needs a 'slots' array"}});
  }
  const auto& slots = j["slots"];
  std::size_t n = j.contains("n") ? j["n"].get<std::size_t>() : (slots.empty() ? 0 : slots.size() - 1);
  if (slots.size() != n + 1) {
    throw ParseError({Diagnostic{0, 0, "structured stream: 'n' does not match slot count"}});
  }
  Stream sigma(n);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    for (const auto& a : slots[i]) sigma.insert(i, parse_ground_atom(a.get<std::string>()));
  }
  return sigma;
}

}  // namespace sreason
