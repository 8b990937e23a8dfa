#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace subshift {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxAlphabet = 255;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  // Labels 0-9, a-z, A-Z, then "#<index>".
  static Alphabet of_size(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(Letter a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Letter> find(std::string_view label) const;
  bool single_char() const { return single_char_; }

  std::string render(std::span<const Letter> w) const;
  // Only for single-character alphabets.
  Word parse(std::string_view text) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> labels_;
  bool single_char_ = true;
};

struct SubstitutionFlags {
  bool constant_length = false;
  bool primitive = false;
  bool bijective = false;
  bool growth_ok = false;
};

class Substitution {
 public:
  Substitution(Alphabet alphabet, std::vector<Word> images);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return images_.size(); }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const { return images_; }
  const SubstitutionFlags& flags() const { return flags_; }

  // Common image length when the substitution is uniform.
  std::optional<std::size_t> uniform_length() const;
  std::size_t min_image_length() const;
  std::size_t max_image_length() const;

  Word apply(std::span<const Letter> w) const;
  // The k-th iterate applied to a single letter; k = 0 gives the letter itself.
  Word iterate(Letter a, std::size_t k) const;
  // |image^k(a)| for every letter, saturating at max_len.
  std::vector<std::size_t> iterate_lengths(std::size_t k,
                                           std::size_t max_len) const;

  bool operator==(const Substitution& o) const {
    return alphabet_ == o.alphabet_ && images_ == o.images_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
  SubstitutionFlags flags_;
};

// outer applied after inner; alphabets must agree.
Substitution compose(const Substitution& outer, const Substitution& inner);
Substitution power(const Substitution& s, std::size_t n);

bool is_primitive(const Substitution& s);
bool is_bijective(const Substitution& s);
bool has_unbounded_growth(const Substitution& s);

// Smallest p such that the first-letter and the last-letter maps of the p-th
// power are both the identity.
std::size_t first_last_letter_period(const Substitution& s);

// Letter maps as vectors a -> image.
std::vector<Letter> first_letter_map(const Substitution& s);
std::vector<Letter> last_letter_map(const Substitution& s);

}  // namespace subshift
