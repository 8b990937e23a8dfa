#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "subshift/core.hpp"
#include "subshift/kernels.hpp"
#include "subshift/language.hpp"

namespace subshift {

// Expressions over n built from integers, +, *, ^, log(...) and parentheses.
class GrowthFunction {
 public:
  static GrowthFunction parse(const std::string& text);
  long double operator()(long double n) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

// Binary De Bruijn sequence of the given order, linearized so that every
// word of that length occurs.  Image 0 starts at the run of zeros, image 1 is
// the same cycle read from its second symbol.  Order 1 uses order 2.
class DeBruijnSubstitution {
 public:
  explicit DeBruijnSubstitution(std::size_t order);

  std::size_t order() const { return order_; }
  std::size_t effective_order() const { return effective_; }
  std::uint64_t length() const { return (std::uint64_t{1} << effective_) + effective_ - 1; }

  // First min(n, length) letters of the image of a.
  Word image_prefix(Letter a, std::uint64_t n) const;
  // Both images in full; throws CapExceeded above max_length.
  Substitution materialize(std::uint64_t max_length) const;

 private:
  static constexpr std::size_t kCachedOrder = 22;
  Word generate(Letter a, std::uint64_t n) const;

  std::size_t order_;
  std::size_t effective_;
  std::shared_ptr<const std::array<Word, 2>> cache_;
};

// Full k-coverage scan of a binary word.
bool covers_all_binary_words(std::span<const Letter> w, std::size_t k);

struct Stage {
  std::size_t k = 0;
  std::uint64_t tau_length = 0;
  std::uint64_t outer_length = 0;  // length of the composition applied before this stage's cube
  std::uint64_t ell = 0;           // 2 * outer_length
  std::uint64_t m = 0;             // k * 8 * outer_length
  long double phi_m = 0;
};

struct StagePlan {
  GrowthFunction phi;
  std::vector<Stage> stages;
  std::uint64_t budget = 0;
  bool interleaved = true;  // ell_1 < m_1 < ell_2 < ...
};

inline constexpr std::uint64_t kDefaultPrefixBudget = 10'000'000;

StagePlan plan_stages(const GrowthFunction& phi, std::size_t stage_count,
                      std::uint64_t budget = kDefaultPrefixBudget);

struct Checkpoint {
  std::string name;            // "l1", "m1", ...
  std::uint64_t length = 0;
  std::string relation;        // "<=" or ">="
  long double target = 0;
  std::optional<std::uint64_t> count;
  std::uint64_t symbols = 0;   // length of the word the count was taken on
  Verdict verdict = Verdict::inconclusive;
  std::string detail;
};

struct MixedReport {
  std::vector<Checkpoint> checkpoints;
  std::uint64_t prefix_length = 0;     // symbols of the limit point materialized
  Verdict prefix_property = Verdict::inconclusive;
  Verdict recurrence = Verdict::inconclusive;
  std::string recurrence_detail;
  bool coverage_ok = true;             // every materialized stage substitution covers its order
  std::vector<WindowComparison> window_checks;
  bool all_pass() const;
};

MixedReport materialize_and_check(const StagePlan& plan);

}  // namespace subshift
