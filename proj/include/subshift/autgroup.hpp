#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subshift/asymptotic.hpp"
#include "subshift/core.hpp"
#include "subshift/group.hpp"
#include "subshift/kernels.hpp"
#include "subshift/language.hpp"

namespace subshift {

inline constexpr Letter kUndefinedLetter = 0xff;

// Local rule of a sliding block code: windows of length 2r+1, indexed in
// base |A| with the first letter most significant.
class SlidingRule {
 public:
  SlidingRule() = default;
  SlidingRule(std::size_t alphabet_size, std::size_t radius);

  static SlidingRule letter_map(const std::vector<Letter>& map);
  static SlidingRule identity(std::size_t alphabet_size);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t radius() const { return radius_; }
  std::size_t window() const { return 2 * radius_ + 1; }
  const std::vector<Letter>& table() const { return table_; }

  std::size_t code(std::span<const Letter> window) const;
  Letter at(std::span<const Letter> window) const { return table_[code(window)]; }
  void set(std::span<const Letter> window, Letter value) { table_[code(window)] = value; }
  void set_code(std::size_t code, Letter value) { table_[code] = value; }

  // Two hex digits per window, "ff" for windows outside the language.
  std::string to_hex() const;
  static SlidingRule from_hex(std::size_t alphabet_size, std::size_t radius, const std::string& hex);

  bool operator==(const SlidingRule&) const = default;
  auto operator<=>(const SlidingRule&) const = default;

 private:
  std::size_t alphabet_size_ = 0;
  std::size_t radius_ = 0;
  std::vector<Letter> table_;
};

enum class AutStatus { certified_total, certified_individual, candidate };
std::string to_string(AutStatus s);

// The map x -> shift^k(rule(x)).
struct AutomorphismDescriptor {
  std::int64_t shift = 0;
  SlidingRule rule;
  AutStatus status = AutStatus::candidate;
  std::optional<SlidingRule> inverse;
  std::int64_t inverse_shift = 0;
  bool shift_power = false;  // equal to a power of the shift

  std::size_t reach() const;  // radius plus |shift|
  std::size_t inverse_reach() const;
};

AutomorphismDescriptor shift_descriptor(std::size_t alphabet_size, std::int64_t k);
AutomorphismDescriptor letter_descriptor(const std::vector<Letter>& map);
AutomorphismDescriptor inverse_of(const AutomorphismDescriptor& d);

// Image of w under the map, keeping `reach` letters of context on each side:
// the result has length |w| - 2 reach and letter i sits at position i + reach.
Word evaluate(const SlidingRule& rule, std::int64_t shift, std::span<const Letter> w,
              std::size_t reach);

struct QuotientSummary {
  std::size_t order = 0;
  bool abelian = true;
  std::vector<std::size_t> element_orders;
  std::string iso_label;
};

// Letter bijections commuting with the substitution, identity first, with the
// composition table (row i, column j holds the index of element i after j).
struct QuotientGroup {
  std::vector<std::vector<Letter>> elements;
  CayleyTable table;
  AutStatus status = AutStatus::certified_total;

  FiniteGroup as_group() const;
  QuotientSummary summary() const;
  std::vector<AutomorphismDescriptor> descriptors() const;
};

// Every letter bijection f with f(image(a)) = image(f(a)) letterwise.  For a
// primitive aperiodic uniform bijective substitution these, with the shift,
// generate the full automorphism group.
QuotientGroup letter_automorphisms(const FactorLanguage& lang,
                                   std::size_t aperiodic_cutoff = kDefaultAperiodicCutoff);

inline constexpr std::size_t kRuleSpaceCap = 256;

struct SearchOptions {
  std::size_t radius = 0;
  std::size_t check_depth = 0;      // 0 means 4r+6
  std::optional<std::size_t> inverse_radius;  // default 2r
  std::size_t rule_space_cap = kRuleSpaceCap;
  Execution execution = Execution::parallel;
};

struct SearchResult {
  std::size_t radius = 0;
  std::size_t check_depth = 0;
  std::size_t inverse_radius = 0;
  std::size_t rules_passing = 0;   // before identification modulo the shift
  std::vector<AutomorphismDescriptor> classes;  // one per class modulo the shift
  std::size_t nontrivial() const;
};

// Radius-r local rules defined on the words of length 2r+1 whose images of
// words of length m <= K stay in the language, one per class modulo the shift.
SearchResult search_automorphisms(const FactorLanguage& lang, const SearchOptions& opts);

struct ComponentAction {
  std::vector<std::vector<std::size_t>> permutations;  // per quotient element
  bool decided = true;
  bool homomorphism = true;
  bool free = true;  // nontrivial elements fix no component
  std::string note;
};

ComponentAction aut_action_on_components(const QuotientGroup& quotient,
                                         const AsymptoticReport& components);

struct BallGrowth {
  std::size_t n = 0;
  std::size_t radius = 0;                // largest reach of generators and inverses
  std::size_t count = 0;
  std::size_t evaluation_length = 0;     // length of the covering word used
  std::optional<std::size_t> visiting;   // shortest covering walk for 2nr+1
  std::optional<std::uint64_t> bound;    // p(visiting - 2r)
  bool within_bound = true;
  std::string note;
};

// Products of between 1 and n generators or inverses, counted by their images
// on a language word containing every word of length 2nr+1.
BallGrowth ball_growth(const FactorLanguage& lang,
                       const std::vector<AutomorphismDescriptor>& generators, std::size_t n,
                       std::size_t state_cap = kVisitStateCap);

}  // namespace subshift
