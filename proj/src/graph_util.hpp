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

#ifndef SREASON_SRC_GRAPH_UTIL_HPP
#define SREASON_SRC_GRAPH_UTIL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sreason::detail {

/// Predicate dependency graph. edges[from][to] = 1 for a strict (negative,
/// non-harmless) dependency, 0 otherwise.
struct PredGraph {
  std::set<std::string> nodes;
  std::map<std::string, std::map<std::string, int>> edges;

  void add(const std::string& from, const std::string& to, int weight) {
    nodes.insert(from);
    nodes.insert(to);
    auto& w = edges[from][to];
    w = std::max(w, weight);
  }
};

struct Stratification {
  std::map<std::string, int> level;
  /// Set when a strict edge lies on a cycle: the cycle as a predicate list,
  /// first element repeated at the end.
  std::optional<std::vector<std::string>> bad_cycle;
};

inline Stratification stratify(const PredGraph& g) {
  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int counter = 0;
  int ncomp = 0;
  static const std::map<std::string, int> kNone;
  auto outs = [&](const std::string& v) -> const std::map<std::string, int>& {
    auto it = g.edges.find(v);
    return it == g.edges.end() ? kNone : it->second;
  };
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& [w, weight] : outs(v)) {
      (void)weight;
      if (index.count(w) == 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w) != 0) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = ncomp;
      } while (w != v);
      ++ncomp;
    }
  };
  for (const auto& v : g.nodes) {
    if (index.count(v) == 0) visit(v);
  }

  Stratification out;
  for (const auto& [from, targets] : g.edges) {
    for (const auto& [to, w] : targets) {
      if (w == 0 || comp[from] != comp[to]) continue;
      // Close the strict edge from -> to with a path to -> ... -> from.
      std::map<std::string, std::string> parent{{to, to}};
      std::vector<std::string> queue{to};
      for (std::size_t qi = 0; qi < queue.size() && parent.count(from) == 0; ++qi) {
        for (const auto& [next, unused] : outs(queue[qi])) {
          (void)unused;
          if (comp[next] == comp[from] && parent.count(next) == 0) {
            parent[next] = queue[qi];
            queue.push_back(next);
          }
        }
      }
      std::vector<std::string> cycle;
      for (std::string v = from;; v = parent[v]) {
        cycle.push_back(v);
        if (v == to) break;
      }
      std::reverse(cycle.begin(), cycle.end());
      cycle.insert(cycle.begin(), from);
      out.bad_cycle = cycle;
      return out;
    }
  }

  // Tarjan numbers components in reverse topological order.
  std::vector<int> level(static_cast<std::size_t>(ncomp), 0);
  std::vector<std::vector<std::string>> members(static_cast<std::size_t>(ncomp));
  for (const auto& [v, c] : comp) members[static_cast<std::size_t>(c)].push_back(v);
  for (int c = ncomp - 1; c >= 0; --c) {
    for (const auto& from : members[static_cast<std::size_t>(c)]) {
      for (const auto& [to, w] : outs(from)) {
        if (comp[to] == c) continue;
        auto& lv = level[static_cast<std::size_t>(comp[to])];
        lv = std::max(lv, level[static_cast<std::size_t>(c)] + w);
      }
    }
  }
  for (const auto& [v, c] : comp) out.level[v] = level[static_cast<std::size_t>(c)];
  return out;
}

}  // namespace sreason::detail

#endif  // SREASON_SRC_GRAPH_UTIL_HPP
