#pragma once

// Independent brute-force reference computations shared by the unit tests.

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "subshift/core.hpp"
#include "subshift/io.hpp"

namespace oracle {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SUBSHIFT_FIXTURE_DIR) / name;
}

inline subshift::Substitution fixture_subst(const std::string& name) {
  return subshift::load_substitution(fixture(name));
}

// Long iterates of every letter, built by plain string rewriting.
inline std::vector<std::string> long_iterates(const subshift::Substitution& s,
                                              std::size_t min_len) {
  std::vector<std::string> out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    std::string w(1, static_cast<char>('a' + a));
    while (w.size() < min_len) {
      std::string next;
      for (char c : w)
        for (auto b : s.image(static_cast<subshift::Letter>(c - 'a')))
          next.push_back(static_cast<char>('a' + b));
      w = std::move(next);
    }
    out.push_back(std::move(w));
  }
  return out;
}

inline std::set<std::string> windows(const std::vector<std::string>& ws, std::size_t n) {
  std::set<std::string> out;
  for (const auto& w : ws)
    for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

inline std::set<std::string> as_strings(const std::vector<subshift::Word>& words) {
  std::set<std::string> out;
  for (const auto& w : words) {
    std::string s;
    for (auto a : w) s.push_back(static_cast<char>('a' + a));
    out.insert(s);
  }
  return out;
}

}  // namespace oracle
