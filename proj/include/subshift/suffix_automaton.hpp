#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "subshift/core.hpp"

namespace subshift {

// Generalized suffix automaton over a small dense alphabet.  Counting distinct
// factors of every length is linear in the total input length.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::size_t alphabet_size);

  void add_word(std::span<const Letter> w);
  void reserve(std::size_t total_length);

  // counts[n] for n = 0..max_n; counts[0] is 1 once any word was added.
  std::vector<std::uint64_t> factor_counts(std::size_t max_n) const;
  bool contains(std::span<const Letter> w) const;
  std::size_t state_count() const { return len_.size(); }

 private:
  std::int32_t extend(std::int32_t last, Letter c);
  std::int32_t clone(std::int32_t q, std::int32_t len);
  std::int32_t& next(std::int32_t state, Letter c) {
    return next_[static_cast<std::size_t>(state) * k_ + c];
  }
  std::int32_t next(std::int32_t state, Letter c) const {
    return next_[static_cast<std::size_t>(state) * k_ + c];
  }

  std::size_t k_;
  std::vector<std::int32_t> len_;
  std::vector<std::int32_t> link_;
  std::vector<std::int32_t> next_;
};

}  // namespace subshift
