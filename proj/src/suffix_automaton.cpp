#include "subshift/suffix_automaton.hpp"

#include <algorithm>

#include "subshift/error.hpp"

namespace subshift {

SuffixAutomaton::SuffixAutomaton(std::size_t alphabet_size) : k_(alphabet_size) {
  len_.push_back(0);
  link_.push_back(-1);
  next_.assign(k_, -1);
}

void SuffixAutomaton::reserve(std::size_t total_length) {
  len_.reserve(2 * total_length + 1);
  link_.reserve(2 * total_length + 1);
  next_.reserve((2 * total_length + 1) * k_);
}

std::int32_t SuffixAutomaton::clone(std::int32_t q, std::int32_t len) {
  const auto c = static_cast<std::int32_t>(len_.size());
  len_.push_back(len);
  link_.push_back(link_[q]);
  const std::size_t base = next_.size();
  next_.resize(base + k_);
  std::copy_n(next_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(q) * k_), k_,
              next_.begin() + static_cast<std::ptrdiff_t>(base));
  return c;
}

std::int32_t SuffixAutomaton::extend(std::int32_t last, Letter c) {
  if (std::int32_t q = next(last, c); q != -1) {
    if (len_[last] + 1 == len_[q]) return q;
    std::int32_t cl = clone(q, len_[last] + 1);
    for (std::int32_t p = last; p != -1 && next(p, c) == q; p = link_[p]) next(p, c) = cl;
    link_[q] = cl;
    return cl;
  }
  const auto cur = static_cast<std::int32_t>(len_.size());
  len_.push_back(len_[last] + 1);
  link_.push_back(0);
  next_.resize(next_.size() + k_, -1);
  std::int32_t p = last;
  while (p != -1 && next(p, c) == -1) {
    next(p, c) = cur;
    p = link_[p];
  }
  if (p == -1) return cur;
  std::int32_t q = next(p, c);
  if (len_[p] + 1 == len_[q]) {
    link_[cur] = q;
    return cur;
  }
  std::int32_t cl = clone(q, len_[p] + 1);
  for (; p != -1 && next(p, c) == q; p = link_[p]) next(p, c) = cl;
  link_[q] = cl;
  link_[cur] = cl;
  return cur;
}

void SuffixAutomaton::add_word(std::span<const Letter> w) {
  if (len_.size() + 2 * w.size() > 0x7fffffffu)
    throw CapExceeded("suffix automaton input too long");
  std::int32_t last = 0;
  for (Letter c : w) {
    if (c >= k_) throw PreconditionError("letter outside automaton alphabet");
    last = extend(last, c);
  }
}

std::vector<std::uint64_t> SuffixAutomaton::factor_counts(std::size_t max_n) const {
  std::vector<std::int64_t> delta(max_n + 2, 0);
  for (std::size_t v = 1; v < len_.size(); ++v) {
    auto lo = static_cast<std::size_t>(len_[link_[v]]) + 1;
    auto hi = std::min(static_cast<std::size_t>(len_[v]), max_n);
    if (lo > hi) continue;
    delta[lo] += 1;
    delta[hi + 1] -= 1;
  }
  std::vector<std::uint64_t> counts(max_n + 1, 0);
  counts[0] = len_.size() > 1 ? 1 : 0;
  std::int64_t run = 0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    run += delta[n];
    counts[n] = static_cast<std::uint64_t>(run);
  }
  return counts;
}

bool SuffixAutomaton::contains(std::span<const Letter> w) const {
  std::int32_t s = 0;
  for (Letter c : w) {
    if (c >= k_) return false;
    s = next(s, c);
    if (s == -1) return false;
  }
  return true;
}

}  // namespace subshift
