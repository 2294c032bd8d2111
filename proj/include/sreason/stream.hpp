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

#ifndef SREASON_STREAM_HPP
#define SREASON_STREAM_HPP

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sreason/core.hpp"

namespace sreason {

/// A finite stream <S_0, ..., S_n>. Index equals time point. Always has at
/// least one slot.
class Stream {
 public:
  Stream() : slots_(1) {}
  explicit Stream(std::size_t last) : slots_(last + 1) {}
  explicit Stream(std::vector<AtomSet> slots);

  std::size_t n() const { return slots_.size() - 1; }
  std::size_t size() const { return slots_.size(); }

  const AtomSet& operator[](std::size_t i) const { return slots_.at(i); }
  AtomSet& operator[](std::size_t i) { return slots_.at(i); }
  const std::vector<AtomSet>& slots() const { return slots_; }

  void insert(std::size_t i, GroundAtom atom) { slots_.at(i).insert(std::move(atom)); }
  bool contains(std::size_t i, const GroundAtom& atom) const { return slots_.at(i).count(atom) != 0; }

  /// Slotwise inclusion; streams of different length are never included.
  bool subset_of(const Stream& other) const;
  std::set<std::string> predicates() const;
  std::size_t atom_count() const;

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::vector<AtomSet> slots_;
};

/// Consecutive time points lo..hi; empty when lo > hi.
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  bool contains(std::int64_t t) const { return lo <= t && t <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A substream: same length as its source, empty outside `interval`.
struct Substream {
  Interval interval;
  Stream stream;
};

/// Backward observation O(Σ, D), kept as (index, slot) pairs so that equal
/// slots at different time points are counted separately.
struct ObservationSet {
  std::vector<std::pair<std::size_t, AtomSet>> members;  // descending index

  std::vector<std::size_t> indices() const;
};

/// Σ|_m. Throws std::out_of_range when m > n.
Stream restrict_to_time(const Stream& sigma, std::size_t m);

/// Σ|_F.
Stream restrict_to_preds(const Stream& sigma, const std::set<std::string>& preds);

/// O(Σ, D). Throws ValidationError when D is empty.
ObservationSet backward_observation(const Stream& sigma, const std::set<std::int64_t>& offsets);

/// Time-based window f_w(Σ, t): interval max(0, t-w)..t with slots copied.
/// Throws std::out_of_range when t > n.
Substream time_window(const Stream& sigma, std::size_t t, std::size_t w);

/// Number of observation members (indices n-d >= 0, d in D) that contain
/// `atom`, together with the number of members. Used on hot paths instead of
/// materializing the observation.
struct ObservationCount {
  std::size_t hits = 0;
  std::size_t members = 0;
};
ObservationCount count_in_observation(const Stream& sigma, const GroundAtom& atom,
                                      const std::set<std::int64_t>& offsets);

/// Calls `fn` for each atom of `slot` with the given predicate.
void for_each_with_predicate(const AtomSet& slot, const std::string& predicate,
                             const std::function<void(const GroundAtom&)>& fn);

// {{{1 text and structured formats

/// Parses a ground atom in canonical form, e.g. `b(1,x)`.
GroundAtom parse_ground_atom(std::string_view text);

/// Parses whitespace/period separated ground atoms (background files).
AtomSet parse_atom_set(std::string_view text);

/// `<i>: atom atom ...` lines; missing indices are empty; `%` starts a comment.
Stream parse_stream_text(std::string_view text);
/// Prints every slot, including empty ones, so the length round-trips.
std::string print_stream_text(const Stream& sigma);

/// Structured object {"n": n, "slots": [["a(1)", ...], ...]}.
std::string print_stream_json(const Stream& sigma);
Stream parse_stream_json(std::string_view text);

}  // namespace sreason

#endif  // SREASON_STREAM_HPP
