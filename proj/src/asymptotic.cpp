#include "subshift/asymptotic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "subshift/error.hpp"
#include "subshift/suffix_automaton.hpp"

namespace subshift {

OneSidedFixedPoint::OneSidedFixedPoint(const Substitution& s, Letter seed, std::size_t period,
                                       Side side)
    : subst_(s), period_(period), seed_(seed), side_(side) {
  if (period == 0) throw PreconditionError("period must be positive");
  // The anchor letter of the period-th iterate must be the seed.
  Letter a = seed;
  for (std::size_t i = 0; i < period; ++i) {
    const Word& img = s.image(a);
    a = side == Side::right ? img.front() : img.back();
  }
  if (a != seed) throw PreconditionError("seed is not fixed by the chosen power");
}

// Iterating the substitution on a truncated word keeps the truncation exact,
// so the power itself is never built.
Word OneSidedFixedPoint::prefix(std::size_t len) const {
  Word w{seed_};
  for (std::size_t round = 0; round == 0 || w.size() < len; ++round) {
    const std::size_t before = w.size();
    for (std::size_t i = 0; i < period_; ++i) {
      Word next;
      if (side_ == Side::right) {
        for (Letter a : w) {
          const Word& img = subst_.image(a);
          next.insert(next.end(), img.begin(), img.end());
          if (next.size() >= len) break;
        }
        if (next.size() > len) next.resize(len);
      } else {
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
          const Word& img = subst_.image(*it);
          next.insert(next.end(), img.rbegin(), img.rend());
          if (next.size() >= len) break;
        }
        if (next.size() > len) next.resize(len);
        std::reverse(next.begin(), next.end());
      }
      w = std::move(next);
    }
    if (w.size() == before && w.size() < len) throw PreconditionError("fixed point does not grow");
  }
  return w;
}

AsymptoticReport asymptotic_components(const FactorLanguage& lang, std::size_t depth,
                                       std::size_t aperiodic_cutoff) {
  const Substitution& s = lang.substitution();
  if (!s.flags().primitive) throw PreconditionError("substitution is not primitive");
  if (!s.flags().bijective) throw PreconditionError("substitution is not bijective");
  if (is_eventually_periodic(lang, aperiodic_cutoff).periodic)
    throw PreconditionError("language is eventually periodic");
  AsymptoticReport r;
  r.period = first_last_letter_period(s);
  r.depth = depth;
  const auto& pairs = lang.factors(2);
  for (std::size_t a = 0; a < s.size(); ++a) {
    AsymptoticComponent c;
    c.seed = static_cast<Letter>(a);
    for (const auto& u : pairs)
      if (u[1] == a) c.branches.push_back(u[0]);
    if (c.branches.size() < 2) continue;
    c.tail = OneSidedFixedPoint(s, c.seed, r.period, Side::right).prefix(5 * depth + 1);
    r.components.push_back(std::move(c));
  }
  // Distinct seeds give tails that are never equal after shifting.  A pair
  // that agrees on [depth, 4 depth) for some shift up to depth leaves the
  // count undecided.
  for (std::size_t i = 0; i < r.components.size(); ++i)
    for (std::size_t j = i + 1; j < r.components.size(); ++j) {
      const Word& x = r.components[i].tail;
      const Word& y = r.components[j].tail;
      for (std::size_t sx = 0; sx <= depth; ++sx)
        for (std::size_t sy = 0; sy <= depth; ++sy) {
          if (sx != 0 && sy != 0) continue;
          bool agree = true;
          for (std::size_t k = depth; k < 4 * depth && agree; ++k) agree = x[k + sx] == y[k + sy];
          if (agree) {
            r.exact = false;
            r.note = "tails of seeds " + std::to_string(i) + " and " + std::to_string(j) +
                     " agree at depth " + std::to_string(depth);
          }
        }
    }
  for (auto& c : r.components) c.tail.resize(depth);
  if (r.exact) r.note = "distinct right tails at depth " + std::to_string(depth);
  return r;
}

LeftSpecialTree left_special_tree(const FactorLanguage& lang, std::size_t depth,
                                  std::size_t lookahead) {
  LeftSpecialTree t;
  t.depth = depth;
  t.lookahead = lookahead;
  for (std::size_t n = 1; n <= depth; ++n)
    t.level_counts.push_back(special_words(lang, n, Side::left).size());
  std::map<Word, std::set<Letter>> persistent;
  for (const auto& sw : special_words(lang, depth + lookahead, Side::left)) {
    Word head(sw.word.begin(), sw.word.begin() + static_cast<std::ptrdiff_t>(depth));
    persistent[head].insert(sw.extensions.begin(), sw.extensions.end());
  }
  for (auto& [w, ext] : persistent)
    t.persistent.push_back({w, std::vector<Letter>(ext.begin(), ext.end())});
  return t;
}

std::vector<Desubstitution> desubstitutions(const FactorLanguage& lang,
                                            std::span<const Letter> w) {
  const Substitution& s = lang.substitution();
  std::vector<Desubstitution> out;
  Word pre;
  auto matches = [&](const Word& img, std::size_t from, std::size_t pos, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
      if (img[from + i] != w[pos + i]) return false;
    return true;
  };
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t pos, std::size_t offset) {
    if (pos == w.size()) {
      if (lang.contains(pre)) out.push_back({pre, offset});
      return;
    }
    for (std::size_t c = 0; c < s.size(); ++c) {
      const Word& img = s.image(static_cast<Letter>(c));
      const std::size_t len = std::min(img.size(), w.size() - pos);
      if (!matches(img, 0, pos, len)) continue;
      pre.push_back(static_cast<Letter>(c));
      extend(pos + len, offset);
      pre.pop_back();
    }
  };
  for (std::size_t b = 0; b < s.size(); ++b) {
    const Word& img = s.image(static_cast<Letter>(b));
    for (std::size_t o = 0; o < img.size(); ++o) {
      const std::size_t len = std::min(img.size() - o, w.size());
      if (!matches(img, o, 0, len)) continue;
      pre.assign(1, static_cast<Letter>(b));
      extend(len, o);
    }
  }
  std::sort(out.begin(), out.end(), [](const Desubstitution& x, const Desubstitution& y) {
    return std::tie(x.offset, x.preimage) < std::tie(y.offset, y.preimage);
  });
  return out;
}

DoublingComponentReport verify_doubling_component(std::size_t max_n,
                                                  std::vector<Word> forbidden,
                                                  std::size_t lookahead_factor,
                                                  std::size_t samples,
                                                  std::size_t sample_length,
                                                  std::uint64_t seed) {
  if (lookahead_factor < 1) throw PreconditionError("lookahead factor must be at least 1");
  const Alphabet ab = Alphabet::of_size(2);
  const auto lang = FactorLanguage::from_substitution(Substitution(ab, {{0, 1, 0}, {1, 1}}));
  DoublingComponentReport r;
  r.max_n = max_n;

  for (auto& f : forbidden) {
    ForbiddenWordCheck check{std::move(f), std::nullopt};
    for (std::size_t n = check.word.size(); n <= max_n && !check.witness; ++n)
      for (const auto& w : lang.factors(n))
        if (std::search(w.begin(), w.end(), check.word.begin(), check.word.end()) != w.end()) {
          check.witness = w;
          break;
        }
    if (check.witness) {
      r.forbidden_absent = false;
      if (!r.forbidden_detail.empty()) r.forbidden_detail += "; ";
      r.forbidden_detail += ab.render(check.word) + " occurs in " + ab.render(*check.witness);
    }
    r.forbidden.push_back(std::move(check));
  }
  if (r.forbidden_absent) {
    r.forbidden_detail = "absent up to length " + std::to_string(max_n) + ":";
    for (const auto& c : r.forbidden) r.forbidden_detail += " " + ab.render(c.word);
  }

  for (std::size_t n = 1; n <= max_n && r.tails_are_ones; ++n) {
    auto tree = left_special_tree(lang, n, (lookahead_factor - 1) * n);
    if (tree.persistent.size() != 1 || tree.persistent[0].prefix != Word(n, 1)) {
      r.tails_are_ones = false;
      r.tails_detail = "persistent left special words of length " + std::to_string(n) + ":";
      for (const auto& b : tree.persistent) r.tails_detail += " " + ab.render(b.prefix);
    }
  }
  if (r.tails_are_ones)
    r.tails_detail = "persistent left special words are runs of 1 up to length " +
                     std::to_string(max_n);

  std::vector<Word> words;
  for (const auto& w : lang.factors(sample_length))
    if (w != Word(sample_length, 1)) words.push_back(w);
  const Word host = lang.covering_word(sample_length);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, host.size() - sample_length);
  for (std::size_t i = 0; i < samples;) {
    std::size_t at = pick(rng);
    Word w(host.begin() + static_cast<std::ptrdiff_t>(at),
           host.begin() + static_cast<std::ptrdiff_t>(at + sample_length));
    if (w == Word(sample_length, 1)) continue;
    words.push_back(std::move(w));
    ++i;
  }
  for (const auto& w : words) {
    auto parses = desubstitutions(lang, w);
    ++r.words_checked;
    if (parses.size() != 1) {
      r.unique_desubstitution = false;
      r.failures.push_back({w, parses.size()});
    }
  }
  return r;
}

}  // namespace subshift
