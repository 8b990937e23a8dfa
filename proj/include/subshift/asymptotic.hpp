#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subshift/core.hpp"
#include "subshift/language.hpp"

namespace subshift {

// Limit of the iterates of a letter under a power of the substitution.  The
// right version needs the power's first letter map to fix the seed, the left
// version its last letter map.
class OneSidedFixedPoint {
 public:
  OneSidedFixedPoint(const Substitution& s, Letter seed, std::size_t period, Side side);

  Letter seed() const { return seed_; }
  Side side() const { return side_; }
  // First len letters (right) or last len letters in reading order (left).
  Word prefix(std::size_t len) const;

 private:
  Substitution subst_;
  std::size_t period_;
  Letter seed_;
  Side side_;
};

struct AsymptoticComponent {
  Letter seed = 0;                // first letter of the common right tail
  std::vector<Letter> branches;   // letters b with b seed in the language
  Word tail;                      // prefix of the right tail
};

struct AsymptoticReport {
  std::size_t period = 0;
  std::size_t depth = 0;
  std::vector<AsymptoticComponent> components;
  bool exact = true;
  std::string note;
};

inline constexpr std::size_t kDefaultTailDepth = 64;
inline constexpr std::size_t kDefaultAperiodicCutoff = 16;

// Components of asymptotic orbits for a primitive aperiodic uniform
// bijective substitution.
AsymptoticReport asymptotic_components(const FactorLanguage& lang,
                                       std::size_t depth = kDefaultTailDepth,
                                       std::size_t aperiodic_cutoff = kDefaultAperiodicCutoff);

struct LeftSpecialBranch {
  Word prefix;
  std::vector<Letter> extensions;
};

struct LeftSpecialTree {
  std::size_t depth = 0;
  std::size_t lookahead = 0;
  std::vector<std::size_t> level_counts;         // left special words of length 1..depth
  std::vector<LeftSpecialBranch> persistent;     // level-depth words that still branch deeper
};

// Left special words up to `depth`; a level-depth word is persistent when it
// is a prefix of a left special word of length depth + lookahead.
LeftSpecialTree left_special_tree(const FactorLanguage& lang, std::size_t depth,
                                  std::size_t lookahead);

struct DesubstitutionSample {
  Word word;
  std::size_t parses = 0;
};

struct ForbiddenWordCheck {
  Word word;
  std::optional<Word> witness;  // a factor containing word, if one was found
};

struct DoublingComponentReport {
  std::size_t max_n = 0;
  std::vector<ForbiddenWordCheck> forbidden;
  bool forbidden_absent = true;
  std::string forbidden_detail;
  bool tails_are_ones = true;
  std::string tails_detail;
  bool unique_desubstitution = true;
  std::size_t words_checked = 0;
  std::vector<DesubstitutionSample> failures;

  bool ok() const { return forbidden_absent && tails_are_ones && unique_desubstitution; }
};

// Checks for 0 -> 010, 1 -> 11: the words 00, 1010, 11011 never occur,
// persistent left special words are runs of 1, and sampled words (plus every
// word of length sample_length other than the run of 1) desubstitute uniquely.
DoublingComponentReport verify_doubling_component(std::size_t max_n,
                                                  std::vector<Word> forbidden = {{0, 0}, {1, 0, 1, 0}, {1, 1, 0, 1, 1}},
                                                  std::size_t lookahead_factor = 5,
                                                  std::size_t samples = 100,
                                                  std::size_t sample_length = 30,
                                                  std::uint64_t seed = 1);

struct Desubstitution {
  Word preimage;
  std::size_t offset = 0;  // position of w inside the image of the preimage
};

// Every way of cutting w into a suffix of an image, whole images, and a prefix
// of an image.  Only preimages that belong to the language are kept.
std::vector<Desubstitution> desubstitutions(const FactorLanguage& lang,
                                            std::span<const Letter> w);

}  // namespace subshift
