#include "subshift/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "subshift/error.hpp"

namespace subshift {

namespace {

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t n = a.size();
  BoolMatrix c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

BoolMatrix incidence(const Substitution& s) {
  const std::size_t n = s.size();
  BoolMatrix m(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (Letter b : s.image(static_cast<Letter>(a))) m[a][b] = true;
  return m;
}

std::size_t permutation_order(const std::vector<Letter>& f) {
  std::size_t order = 1;
  std::vector<bool> seen(f.size(), false);
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (seen[a]) continue;
    std::size_t len = 0;
    std::size_t b = a;
    while (!seen[b]) {
      seen[b] = true;
      b = f[b];
      ++len;
    }
    if (b != a) return 0;  // not a permutation
    order = std::lcm(order, len);
  }
  return order;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw PreconditionError("alphabet must be nonempty");
  if (labels_.size() > kMaxAlphabet)
    throw PreconditionError("alphabet larger than 255 letters");
  std::set<std::string> distinct(labels_.begin(), labels_.end());
  if (distinct.size() != labels_.size())
    throw PreconditionError("alphabet labels must be distinct");
  for (const auto& l : labels_) {
    if (l.empty()) throw PreconditionError("empty alphabet label");
    if (l.size() != 1) single_char_ = false;
  }
}

Alphabet Alphabet::of_size(std::size_t n) {
  static constexpr std::string_view kChars =
      "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i < kChars.size() ? std::string(1, kChars[i])
                                       : "#" + std::to_string(i));
  return Alphabet(std::move(labels));
}

std::optional<Letter> Alphabet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Letter>(i);
  return std::nullopt;
}

std::string Alphabet::render(std::span<const Letter> w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single_char_ && i > 0) out += ' ';
    out += labels_.at(w[i]);
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  if (!single_char_)
    throw PreconditionError("parse needs single-character labels");
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    auto a = find(std::string_view(&c, 1));
    if (!a) throw PreconditionError(std::string("unknown symbol '") + c + "'");
    w.push_back(*a);
  }
  return w;
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
  if (images_.size() != alphabet_.size())
    throw PreconditionError("one image per letter required");
  for (const auto& img : images_) {
    if (img.empty()) throw PreconditionError("images must be nonempty");
    for (Letter b : img)
      if (b >= alphabet_.size())
        throw PreconditionError("image uses a letter outside the alphabet");
  }
  flags_.constant_length = uniform_length().has_value();
  flags_.growth_ok = has_unbounded_growth(*this);
  flags_.primitive = is_primitive(*this);
  flags_.bijective = is_bijective(*this);
}

std::optional<std::size_t> Substitution::uniform_length() const {
  const std::size_t len = images_.front().size();
  for (const auto& img : images_)
    if (img.size() != len) return std::nullopt;
  return len;
}

std::size_t Substitution::min_image_length() const {
  std::size_t m = images_.front().size();
  for (const auto& img : images_) m = std::min(m, img.size());
  return m;
}

std::size_t Substitution::max_image_length() const {
  std::size_t m = 0;
  for (const auto& img : images_) m = std::max(m, img.size());
  return m;
}

Word Substitution::apply(std::span<const Letter> w) const {
  std::size_t total = 0;
  for (Letter a : w) total += images_[a].size();
  Word out;
  out.reserve(total);
  for (Letter a : w) out.insert(out.end(), images_[a].begin(), images_[a].end());
  return out;
}

Word Substitution::iterate(Letter a, std::size_t k) const {
  Word w{a};
  for (std::size_t i = 0; i < k; ++i) w = apply(w);
  return w;
}

std::vector<std::size_t> Substitution::iterate_lengths(std::size_t k,
                                                       std::size_t max_len) const {
  std::vector<std::size_t> len(size(), 1);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> next(size(), 0);
    for (std::size_t a = 0; a < size(); ++a) {
      std::size_t total = 0;
      for (Letter b : images_[a]) {
        total += len[b];
        if (total >= max_len) {
          total = max_len;
          break;
        }
      }
      next[a] = total;
    }
    len = std::move(next);
  }
  return len;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  if (!(outer.alphabet() == inner.alphabet()))
    throw PreconditionError("compose: alphabets differ");
  std::vector<Word> images;
  images.reserve(inner.size());
  for (const auto& img : inner.images()) images.push_back(outer.apply(img));
  return Substitution(inner.alphabet(), std::move(images));
}

Substitution power(const Substitution& s, std::size_t n) {
  if (n == 0) {
    std::vector<Word> id;
    for (std::size_t a = 0; a < s.size(); ++a) id.push_back({static_cast<Letter>(a)});
    return Substitution(s.alphabet(), std::move(id));
  }
  Substitution result = s;
  for (std::size_t i = 1; i < n; ++i) result = compose(s, result);
  return result;
}

bool is_primitive(const Substitution& s) {
  const std::size_t n = s.size();
  const std::size_t cutoff = (n - 1) * (n - 1) + 1;
  BoolMatrix base = incidence(s);
  BoolMatrix acc;
  bool have = false;
  for (std::size_t e = cutoff; e > 0; e >>= 1) {
    if (e & 1) {
      acc = have ? bool_product(acc, base) : base;
      have = true;
    }
    if (e > 1) base = bool_product(base, base);
  }
  for (const auto& row : acc)
    for (bool v : row)
      if (!v) return false;
  return true;
}

bool is_bijective(const Substitution& s) {
  auto len = s.uniform_length();
  if (!len) return false;
  for (std::size_t i = 0; i < *len; ++i) {
    std::vector<bool> hit(s.size(), false);
    for (std::size_t a = 0; a < s.size(); ++a) {
      Letter b = s.image(static_cast<Letter>(a))[i];
      if (hit[b]) return false;
      hit[b] = true;
    }
  }
  return true;
}

bool has_unbounded_growth(const Substitution& s) {
  // A letter has bounded iterates exactly when every letter on a cycle that it
  // reaches has a one-letter image.
  const std::size_t n = s.size();
  BoolMatrix reach = incidence(s);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  std::vector<bool> expanding(n, false);
  for (std::size_t c = 0; c < n; ++c)
    expanding[c] = reach[c][c] && s.image(static_cast<Letter>(c)).size() >= 2;
  for (std::size_t a = 0; a < n; ++a) {
    bool grows = expanding[a];
    for (std::size_t c = 0; c < n && !grows; ++c) grows = reach[a][c] && expanding[c];
    if (!grows) return false;
  }
  return true;
}

std::vector<Letter> first_letter_map(const Substitution& s) {
  std::vector<Letter> f(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) f[a] = s.image(static_cast<Letter>(a)).front();
  return f;
}

std::vector<Letter> last_letter_map(const Substitution& s) {
  std::vector<Letter> f(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) f[a] = s.image(static_cast<Letter>(a)).back();
  return f;
}

std::size_t first_last_letter_period(const Substitution& s) {
  const std::size_t a = permutation_order(first_letter_map(s));
  const std::size_t b = permutation_order(last_letter_map(s));
  if (a == 0 || b == 0)
    throw PreconditionError("first or last letter map is not a permutation");
  return std::lcm(a, b);
}

}  // namespace subshift
