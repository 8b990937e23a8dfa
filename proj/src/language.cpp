#include "subshift/language.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "subshift/error.hpp"
#include "subshift/suffix_automaton.hpp"

namespace subshift {

struct FactorLanguage::Memo {
  std::mutex mu;
  std::map<std::size_t, std::vector<Word>> levels;
  std::optional<std::filesystem::path> cache_dir;
};

namespace {

constexpr std::size_t kMaxIterate = 64;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

void add_windows(std::span<const Letter> w, std::size_t n, std::set<Word>& out,
                 std::vector<Word>* fresh) {
  if (w.size() < n) return;
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    Word u(w.begin() + static_cast<std::ptrdiff_t>(i),
           w.begin() + static_cast<std::ptrdiff_t>(i + n));
    auto [it, inserted] = out.insert(std::move(u));
    if (inserted && fresh) fresh->push_back(*it);
  }
}

std::vector<Word> windows_of(std::span<const Letter> w, std::size_t n) {
  std::set<Word> out;
  add_windows(w, n, out, nullptr);
  return {out.begin(), out.end()};
}

}  // namespace

ComplexityProfile ComplexityProfile::from_values(std::vector<std::uint64_t> values) {
  ComplexityProfile p;
  p.values = std::move(values);
  for (std::size_t n = 0; n + 1 < p.values.size(); ++n) {
    auto d = static_cast<std::int64_t>(p.values[n + 1]) - static_cast<std::int64_t>(p.values[n]);
    p.first_differences.push_back(d);
    p.diff_bound = std::max(p.diff_bound, d);
  }
  return p;
}

FactorLanguage FactorLanguage::from_substitution(Substitution s) {
  if (!s.flags().growth_ok)
    throw PreconditionError("substitution has a letter with bounded iterates");
  FactorLanguage lang;
  lang.source_ = Source::substitution;
  lang.alphabet_ = s.alphabet();
  lang.subst_ = std::move(s);
  lang.memo_ = std::make_shared<Memo>();
  return lang;
}

FactorLanguage FactorLanguage::from_sequence(Alphabet alphabet, Word seq,
                                             std::size_t valid_prefix) {
  if (valid_prefix > seq.size())
    throw PreconditionError("valid prefix longer than the sequence");
  for (Letter a : seq)
    if (a >= alphabet.size()) throw PreconditionError("sequence letter outside alphabet");
  seq.resize(valid_prefix);
  FactorLanguage lang;
  lang.source_ = Source::sequence;
  lang.alphabet_ = std::move(alphabet);
  lang.sequence_ = std::move(seq);
  lang.memo_ = std::make_shared<Memo>();
  return lang;
}

FactorLanguage FactorLanguage::product(std::vector<FactorLanguage> parts) {
  if (parts.empty()) throw PreconditionError("product of no languages");
  std::size_t size = 1;
  for (const auto& p : parts) size *= p.alphabet().size();
  if (size > kMaxAlphabet) throw PreconditionError("product alphabet larger than 255");
  std::vector<std::string> labels;
  for (std::size_t code = 0; code < size; ++code) {
    std::string label = "(";
    std::size_t rest = code;
    std::vector<std::string> coords(parts.size());
    for (std::size_t i = parts.size(); i-- > 0;) {
      coords[i] = parts[i].alphabet().label(static_cast<Letter>(rest % parts[i].alphabet().size()));
      rest /= parts[i].alphabet().size();
    }
    for (std::size_t i = 0; i < coords.size(); ++i) label += (i ? "," : "") + coords[i];
    labels.push_back(label + ")");
  }
  FactorLanguage lang;
  lang.source_ = Source::product;
  lang.alphabet_ = Alphabet(std::move(labels));
  lang.parts_ = std::move(parts);
  lang.memo_ = std::make_shared<Memo>();
  return lang;
}

const Substitution& FactorLanguage::substitution() const {
  if (!subst_) throw PreconditionError("language is not generated by a substitution");
  return *subst_;
}

void FactorLanguage::set_cache_dir(std::filesystem::path dir) const {
  std::lock_guard lock(memo_->mu);
  memo_->cache_dir = std::move(dir);
}

std::string FactorLanguage::fingerprint() const {
  std::string canon;
  switch (source_) {
    case Source::substitution:
      canon = "subst";
      for (std::size_t a = 0; a < subst_->size(); ++a)
        canon += "|" + alphabet_.label(static_cast<Letter>(a)) + ":" +
                 alphabet_.render(subst_->image(static_cast<Letter>(a)));
      break;
    case Source::sequence:
      canon = "seq";
      for (const auto& l : alphabet_.labels()) canon += "|" + l;
      canon += ":" + alphabet_.render(sequence_);
      break;
    case Source::product:
      canon = "prod";
      for (const auto& p : parts_) canon += "|" + p.fingerprint();
      break;
  }
  return hex64(fnv1a(canon));
}

const std::vector<Word>& FactorLanguage::factors(std::size_t n) const {
  std::optional<std::filesystem::path> cache_file;
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->levels.find(n); it != memo_->levels.end()) return it->second;
    if (memo_->cache_dir)
      cache_file = *memo_->cache_dir / (fingerprint() + "-" + std::to_string(n) + ".json");
  }
  std::optional<std::vector<Word>> computed;
  if (cache_file && std::filesystem::exists(*cache_file)) {
    try {
      std::ifstream in(*cache_file);
      auto j = nlohmann::json::parse(in);
      if (j.at("fingerprint") == fingerprint() && j.at("n") == n)
        computed = j.at("factors").get<std::vector<Word>>();
    } catch (const std::exception&) {
      computed.reset();
    }
  }
  if (!computed) {
    computed = compute_factors(n);
    if (cache_file) {
      nlohmann::json j{{"fingerprint", fingerprint()}, {"n", n}, {"factors", *computed}};
      std::filesystem::create_directories(cache_file->parent_path());
      auto tmp = *cache_file;
      tmp += ".tmp";
      std::ofstream(tmp) << j.dump() << '\n';
      std::filesystem::rename(tmp, *cache_file);
    }
  }
  std::lock_guard lock(memo_->mu);
  auto [it, inserted] = memo_->levels.emplace(n, std::move(*computed));
  return it->second;
}

std::vector<Word> FactorLanguage::compute_factors(std::size_t n) const {
  if (n == 0) return {Word{}};
  switch (source_) {
    case Source::substitution:
      return closure_factors(n);
    case Source::sequence:
      if (n > sequence_.size())
        throw PreconditionError("valid prefix shorter than the requested length " +
                                std::to_string(n));
      return windows_of(sequence_, n);
    case Source::product: {
      std::vector<Word> acc{Word(n, 0)};
      for (const auto& part : parts_) {
        const auto& words = part.factors(n);
        const std::size_t radix = part.alphabet().size();
        std::vector<Word> next;
        next.reserve(acc.size() * words.size());
        for (const auto& a : acc)
          for (const auto& w : words) {
            Word c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Letter>(a[i] * radix + w[i]);
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      std::sort(acc.begin(), acc.end());
      return acc;
    }
  }
  return {};
}

std::vector<Word> FactorLanguage::closure_factors(std::size_t n) const {
  const Substitution& s = *subst_;
  std::size_t k = 1;
  while (true) {
    auto lens = s.iterate_lengths(k, n);
    if (*std::min_element(lens.begin(), lens.end()) >= n) break;
    if (++k > kMaxIterate) throw CapExceeded("iterates grow too slowly");
  }
  std::set<Word> found;
  std::vector<Word> work;
  for (std::size_t a = 0; a < s.size(); ++a) {
    Word w{static_cast<Letter>(a)};
    for (std::size_t i = 1; i <= k; ++i) {
      w = s.apply(w);
      add_windows(w, n, found, &work);
    }
  }
  while (!work.empty()) {
    Word w = std::move(work.back());
    work.pop_back();
    add_windows(s.apply(w), n, found, &work);
  }
  return {found.begin(), found.end()};
}

std::vector<Word> substitution_generator_words(const Substitution& s, std::size_t n,
                                               const std::vector<Word>& two_letter_words) {
  // With every |s^j(a)| >= n - 1, a window of length n in s^N(a), N > j,
  // meets at most two blocks s^j(b), so it lies in s^j(u) for a factor u of
  // length at most two.
  const std::size_t need = std::max<std::size_t>(n, 2) - 1;
  std::size_t j = 1;
  while (true) {
    auto lens = s.iterate_lengths(j, need);
    if (*std::min_element(lens.begin(), lens.end()) >= need) break;
    if (++j > kMaxIterate) throw CapExceeded("iterates grow too slowly");
  }
  std::vector<Word> gens;
  for (std::size_t a = 0; a < s.size(); ++a) {
    Word w{static_cast<Letter>(a)};
    for (std::size_t i = 1; i <= j; ++i) {
      w = s.apply(w);
      gens.push_back(w);
    }
  }
  for (const auto& u : two_letter_words) {
    Word w = u;
    for (std::size_t i = 0; i < j; ++i) w = s.apply(w);
    gens.push_back(std::move(w));
  }
  return gens;
}

std::vector<Word> FactorLanguage::generator_words(std::size_t n) const {
  return substitution_generator_words(*subst_, n, factors(2));
}

bool FactorLanguage::contains(std::span<const Letter> w) const {
  const auto& words = factors(w.size());
  return std::binary_search(words.begin(), words.end(), Word(w.begin(), w.end()));
}

std::uint64_t FactorLanguage::complexity(std::size_t n) const {
  if (source_ == Source::product) {
    std::uint64_t p = 1;
    for (const auto& part : parts_) p *= part.complexity(n);
    return p;
  }
  return factors(n).size();
}

ComplexityProfile FactorLanguage::profile(std::size_t max_n) const {
  std::vector<std::uint64_t> values;
  switch (source_) {
    case Source::substitution: {
      SuffixAutomaton sam(alphabet_.size());
      for (const auto& g : generator_words(max_n)) sam.add_word(g);
      values = sam.factor_counts(max_n);
      break;
    }
    case Source::sequence: {
      if (max_n > sequence_.size())
        throw PreconditionError("valid prefix shorter than the requested length");
      SuffixAutomaton sam(alphabet_.size());
      sam.add_word(sequence_);
      values = sam.factor_counts(max_n);
      break;
    }
    case Source::product: {
      values.assign(max_n + 1, 1);
      for (const auto& part : parts_) {
        auto pv = part.profile(max_n).values;
        for (std::size_t n = 0; n <= max_n; ++n) values[n] *= pv[n];
      }
      break;
    }
  }
  return ComplexityProfile::from_values(std::move(values));
}

Word FactorLanguage::covering_word(std::size_t n, std::size_t max_length) const {
  const std::uint64_t target = complexity(n);
  if (source_ == Source::sequence) return sequence_;
  if (source_ == Source::product)
    throw PreconditionError("covering words are not available for product languages");
  const Substitution& s = *subst_;
  for (std::size_t k = 1; k <= kMaxIterate; ++k) {
    bool any_fit = false;
    for (std::size_t a = 0; a < s.size(); ++a) {
      auto lens = s.iterate_lengths(k, max_length + 1);
      if (lens[a] > max_length) continue;
      any_fit = true;
      Word w = s.iterate(static_cast<Letter>(a), k);
      if (w.size() >= n && count_distinct_windows({w}, n) == target) return w;
    }
    if (!any_fit) break;
  }
  throw CapExceeded("no iterate within the length cap covers all factors of length " +
                    std::to_string(n));
}

std::uint64_t count_distinct_windows(const std::vector<Word>& words, std::size_t m) {
  if (m == 0) return 1;
  std::size_t alphabet = 1;
  std::size_t total = 0;
  for (const auto& w : words) {
    total += w.size();
    for (Letter a : w) alphabet = std::max<std::size_t>(alphabet, a + 1u);
  }
  SuffixAutomaton sam(alphabet);
  sam.reserve(total);
  for (const auto& w : words) sam.add_word(w);
  return sam.factor_counts(m)[m];
}

std::vector<SpecialWord> special_words(const FactorLanguage& lang, std::size_t n, Side side) {
  std::map<Word, std::set<Letter>> ext;
  for (const auto& u : lang.factors(n + 1)) {
    if (side == Side::left)
      ext[Word(u.begin() + 1, u.end())].insert(u.front());
    else
      ext[Word(u.begin(), u.end() - 1)].insert(u.back());
  }
  std::vector<SpecialWord> out;
  for (auto& [w, e] : ext)
    if (e.size() >= 2) out.push_back({w, std::vector<Letter>(e.begin(), e.end())});
  return out;
}

PeriodicityResult is_eventually_periodic(const FactorLanguage& lang, std::size_t cutoff) {
  PeriodicityResult r;
  r.cutoff = cutoff;
  const auto p = lang.profile(cutoff).values;
  for (std::size_t n = 1; n <= cutoff; ++n)
    if (p[n] <= n) {
      r.periodic = true;
      r.witness = n;
      break;
    }
  return r;
}

std::optional<Word> shortest_covering_factor(std::span<const Letter> host,
                                             const std::vector<Word>& words) {
  if (words.empty()) return Word{};
  const std::size_t n = words.front().size();
  if (host.size() < n) return std::nullopt;
  const std::size_t positions = host.size() - n + 1;
  std::vector<std::int64_t> id(positions, -1);
  for (std::size_t i = 0; i < positions; ++i) {
    Word u(host.begin() + static_cast<std::ptrdiff_t>(i),
           host.begin() + static_cast<std::ptrdiff_t>(i + n));
    auto it = std::lower_bound(words.begin(), words.end(), u);
    if (it != words.end() && *it == u) id[i] = it - words.begin();
  }
  std::vector<std::size_t> seen(words.size(), 0);
  std::size_t distinct = 0;
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < positions; ++hi) {
    if (id[hi] >= 0 && seen[static_cast<std::size_t>(id[hi])]++ == 0) ++distinct;
    while (distinct == words.size()) {
      if (!best || hi - lo < best->second - best->first) best = {lo, hi};
      if (id[lo] >= 0 && --seen[static_cast<std::size_t>(id[lo])] == 0) --distinct;
      ++lo;
    }
  }
  if (!best) return std::nullopt;
  return Word(host.begin() + static_cast<std::ptrdiff_t>(best->first),
              host.begin() + static_cast<std::ptrdiff_t>(best->second + n));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

bool has_all_binary_pairs(std::span<const Letter> w) {
  bool seen[4] = {false, false, false, false};
  for (std::size_t i = 0; i + 1 < w.size(); ++i) seen[w[i] * 2 + w[i + 1]] = true;
  return seen[0] && seen[1] && seen[2] && seen[3];
}

void require_binary(const Substitution& s, const char* what) {
  if (s.size() != 2) throw PreconditionError(std::string(what) + " must be binary");
}

Substitution thue_morse_cube() {
  Substitution tm(Alphabet::of_size(2), {{0, 1}, {1, 0}});
  return power(tm, 3);
}

std::vector<std::uint64_t> counts_up_to(const Word& w, std::size_t max_len) {
  SuffixAutomaton sam(2);
  sam.reserve(w.size());
  sam.add_word(w);
  auto c = sam.factor_counts(max_len);
  return {c.begin() + 1, c.end()};
}

Word head(const Word& w, std::size_t len) {
  return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(std::min(len, w.size())));
}

}  // namespace

WindowComparison check_window_equality(const Substitution& xi, const Substitution& tau,
                                       const Word& x_prefix, const Word& y_prefix) {
  require_binary(xi, "xi");
  require_binary(tau, "tau");
  auto len = xi.uniform_length();
  if (!len) throw PreconditionError("xi must have uniform length");
  for (Letter a : {0, 1})
    if (!has_all_binary_pairs(tau.image(a)))
      throw PreconditionError("each image of tau must contain 00, 01, 10 and 11");
  if (!has_all_binary_pairs(x_prefix))
    throw PreconditionError("x prefix must contain 00, 01, 10 and 11");
  WindowComparison r;
  const std::size_t L = *len;
  r.left = counts_up_to(xi.apply(x_prefix), L);
  r.right = counts_up_to(xi.apply(tau.apply(y_prefix)), L);
  // Counts on three quarters of each prefix must already agree with the full
  // prefix, otherwise the prefixes are too short to decide.
  auto left_head = counts_up_to(xi.apply(head(x_prefix, x_prefix.size() * 3 / 4)), L);
  auto right_head =
      counts_up_to(xi.apply(tau.apply(head(y_prefix, y_prefix.size() * 3 / 4))), L);
  if (left_head != r.left || right_head != r.right) {
    r.verdict = Verdict::inconclusive;
    r.detail = "window counts have not stabilized on the given prefixes";
    return r;
  }
  for (std::size_t l = 0; l < L; ++l)
    if (r.left[l] != r.right[l]) {
      r.verdict = Verdict::fail;
      r.detail = "counts differ at length " + std::to_string(l + 1);
      return r;
    }
  r.verdict = Verdict::pass;
  r.detail = "equal for all lengths up to " + std::to_string(L);
  return r;
}

WindowComparison check_doubled_window_bound(const Substitution& xi, const Word& x_prefix) {
  require_binary(xi, "xi");
  auto len = xi.uniform_length();
  if (!len) throw PreconditionError("xi must have uniform length");
  const Substitution cube = thue_morse_cube();
  const std::size_t L = *len;
  WindowComparison r;
  const Word full = xi.apply(cube.apply(x_prefix));
  const Word part = xi.apply(cube.apply(head(x_prefix, x_prefix.size() * 3 / 4)));
  if (full.size() < 2 * L) {
    r.verdict = Verdict::inconclusive;
    r.detail = "prefix shorter than one window";
    return r;
  }
  const std::uint64_t count = count_distinct_windows({full}, 2 * L);
  const std::uint64_t count_part = count_distinct_windows({part}, 2 * L);
  r.left = {count};
  r.right = {6 * L};
  if (count != count_part) {
    r.verdict = Verdict::inconclusive;
    r.detail = "window count has not stabilized on the given prefix";
    return r;
  }
  r.verdict = count <= 6 * L ? Verdict::pass : Verdict::fail;
  r.detail = std::to_string(count) + " windows of length " + std::to_string(2 * L) +
             " against bound " + std::to_string(6 * L);
  return r;
}

}  // namespace subshift
