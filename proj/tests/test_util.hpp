#ifndef SREASON_TESTS_TEST_UTIL_HPP
#define SREASON_TESTS_TEST_UTIL_HPP

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sreason/stream.hpp"

namespace sreason::testing {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(SREASON_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Stream stream_of(const std::vector<std::vector<std::string>>& slots) {
  std::vector<AtomSet> out;
  for (const auto& s : slots) {
    AtomSet set;
    for (const auto& a : s) set.insert(parse_ground_atom(a));
    out.push_back(set);
  }
  return Stream(out);
}

/// Renames identifiers that start with an uppercase letter to V1, V2, ... in
/// order of first appearance.
inline std::string canonical_variables(const std::string& text) {
  std::map<std::string, std::string> names;
  std::string out;
  for (std::size_t i = 0; i < text.size();) {
    const bool boundary = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
    if (boundary && std::isupper(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      const std::string id = text.substr(i, j - i);
      auto it = names.find(id);
      if (it == names.end()) it = names.emplace(id, "V" + std::to_string(names.size() + 1)).first;
      out += it->second;
      i = j;
    } else {
      out += text[i++];
    }
  }
  return out;
}

}  // namespace sreason::testing

#endif  // SREASON_TESTS_TEST_UTIL_HPP
