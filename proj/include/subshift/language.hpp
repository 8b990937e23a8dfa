#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subshift/core.hpp"

namespace subshift {

struct ComplexityProfile {
  std::vector<std::uint64_t> values;             // p(0), ..., p(N)
  std::vector<std::int64_t> first_differences;   // p(n+1) - p(n), n < N
  std::int64_t diff_bound = 0;                   // largest first difference

  static ComplexityProfile from_values(std::vector<std::uint64_t> values);
};

class FactorLanguage {
 public:
  enum class Source { substitution, sequence, product };

  static FactorLanguage from_substitution(Substitution s);
  // Factors are read off seq[0, valid_prefix).
  static FactorLanguage from_sequence(Alphabet alphabet, Word seq, std::size_t valid_prefix);
  static FactorLanguage product(std::vector<FactorLanguage> parts);

  Source source() const { return source_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const Substitution& substitution() const;
  const std::vector<FactorLanguage>& parts() const { return parts_; }

  // Sorted list of the words of length n.
  const std::vector<Word>& factors(std::size_t n) const;
  bool contains(std::span<const Letter> w) const;
  std::uint64_t complexity(std::size_t n) const;

  // p(0..max_n).  Substitution languages use a suffix automaton over
  // generator words instead of enumerating each level.
  ComplexityProfile profile(std::size_t max_n) const;

  // A word of the language that contains every factor of length n.
  Word covering_word(std::size_t n, std::size_t max_length = 10'000'000) const;

  // Stable identifier of the source, used for cache file names.
  std::string fingerprint() const;

  // Persist factor lists as JSON files in dir (see README).
  void set_cache_dir(std::filesystem::path dir) const;

 private:
  struct Memo;
  FactorLanguage() = default;

  std::vector<Word> compute_factors(std::size_t n) const;
  std::vector<Word> closure_factors(std::size_t n) const;
  std::vector<Word> generator_words(std::size_t n) const;

  Source source_ = Source::substitution;
  Alphabet alphabet_;
  std::optional<Substitution> subst_;
  Word sequence_;
  std::vector<FactorLanguage> parts_;
  std::shared_ptr<Memo> memo_;
};

// Words of length n whose every n-window lies in L_n, i.e. the generator
// words used by FactorLanguage::profile.  Exposed for testing.
std::vector<Word> substitution_generator_words(const Substitution& s, std::size_t n,
                                               const std::vector<Word>& two_letter_words);

enum class Side { left, right };

struct SpecialWord {
  Word word;
  std::vector<Letter> extensions;
};

std::vector<SpecialWord> special_words(const FactorLanguage& lang, std::size_t n, Side side);

struct PeriodicityResult {
  bool periodic = false;
  std::optional<std::size_t> witness;  // some n with p(n) <= n
  std::size_t cutoff = 0;
};

PeriodicityResult is_eventually_periodic(const FactorLanguage& lang, std::size_t cutoff);

struct VisitingTime {
  std::size_t n = 0;
  std::size_t value = 0;      // edges of a shortest covering walk + (n - 1)
  std::string method;         // "search" or "flow"
  std::size_t states = 0;     // explored search states (search only)
  Word walk;                  // a shortest covering walk as a word (flow only)
};

inline constexpr std::size_t kVisitStateCap = 20'000'000;

// Breadth-first search over (vertex, covered edge set).  Throws CapExceeded
// when the state space exceeds state_cap.
VisitingTime visiting_time_search(const FactorLanguage& lang, std::size_t n,
                                  std::size_t state_cap = kVisitStateCap);
// Minimum-cost flow formulation of the same shortest covering walk.
VisitingTime visiting_time_flow(const FactorLanguage& lang, std::size_t n);
// Search when the state space fits under the cap, flow otherwise.
VisitingTime visiting_time(const FactorLanguage& lang, std::size_t n,
                           std::size_t state_cap = kVisitStateCap);

// Shortest factor of `host` containing every word of `words` (all of length n).
std::optional<Word> shortest_covering_factor(std::span<const Letter> host,
                                             const std::vector<Word>& words);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

struct WindowComparison {
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
  std::vector<std::uint64_t> left;   // per length 1..L
  std::vector<std::uint64_t> right;
};

// Compares window counts of xi(x) and xi(tau(y)) for all lengths up to |xi|.
// Binary alphabet; xi uniform; tau(0) and tau(1) each contain all four
// two-letter words; the prefix of x contains all four two-letter words.
WindowComparison check_window_equality(const Substitution& xi, const Substitution& tau,
                                       const Word& x_prefix, const Word& y_prefix);

// Window count of xi(cube(x)) at length 2|xi| against 6|xi|, where cube is
// the third power of 0 -> 01, 1 -> 10.
WindowComparison check_doubled_window_bound(const Substitution& xi, const Word& x_prefix);

// Distinct factors of length m across the given words (exact).
std::uint64_t count_distinct_windows(const std::vector<Word>& words, std::size_t m);

}  // namespace subshift
