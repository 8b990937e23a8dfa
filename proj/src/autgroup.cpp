#include "subshift/autgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <omp.h>

#include "subshift/error.hpp"

namespace subshift {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > cap / std::max<std::size_t>(base, 1)) return cap + 1;
    r *= base;
  }
  return r;
}

std::optional<Word> try_evaluate(const SlidingRule& rule, std::int64_t shift,
                                 std::span<const Letter> w, std::size_t reach) {
  const auto r = static_cast<std::int64_t>(rule.radius());
  if (static_cast<std::int64_t>(reach) < r + std::abs(shift))
    throw PreconditionError("evaluation reach is smaller than the rule's reach");
  if (w.size() < 2 * reach) return Word{};
  Word out(w.size() - 2 * reach);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto centre = static_cast<std::int64_t>(i + reach) + shift;
    Letter v = rule.at(w.subspan(static_cast<std::size_t>(centre - r), rule.window()));
    if (v == kUndefinedLetter) return std::nullopt;
    out[i] = v;
  }
  return out;
}

// y1 and y2 agree after shifting y2 by k positions, for some |k| <= max_shift.
std::optional<std::int64_t> shift_between(const Word& y1, const Word& y2, std::size_t max_shift) {
  const auto m = static_cast<std::int64_t>(std::min(y1.size(), y2.size()));
  for (std::int64_t a = 0; a <= static_cast<std::int64_t>(max_shift); ++a)
    for (std::int64_t k : {a, -a}) {
      if (a == 0 && k < 0) continue;
      bool same = true;
      for (std::int64_t i = std::max<std::int64_t>(0, -k); same && i < m && i + k < m; ++i)
        same = y1[static_cast<std::size_t>(i)] == y2[static_cast<std::size_t>(i + k)];
      if (same) return k;
    }
  return std::nullopt;
}

}  // namespace

SlidingRule::SlidingRule(std::size_t alphabet_size, std::size_t radius)
    : alphabet_size_(alphabet_size), radius_(radius) {
  const std::size_t size = ipow(alphabet_size, 2 * radius + 1, std::size_t{1} << 26);
  if (size > (std::size_t{1} << 26)) throw CapExceeded("sliding rule table too large");
  table_.assign(size, kUndefinedLetter);
}

SlidingRule SlidingRule::letter_map(const std::vector<Letter>& map) {
  SlidingRule r(map.size(), 0);
  for (std::size_t a = 0; a < map.size(); ++a) r.table_[a] = map[a];
  return r;
}

SlidingRule SlidingRule::identity(std::size_t alphabet_size) {
  std::vector<Letter> map(alphabet_size);
  std::iota(map.begin(), map.end(), Letter{0});
  return letter_map(map);
}

std::size_t SlidingRule::code(std::span<const Letter> window) const {
  if (window.size() != this->window()) throw PreconditionError("window length mismatch");
  std::size_t c = 0;
  for (Letter a : window) {
    if (a >= alphabet_size_) throw PreconditionError("letter outside the rule alphabet");
    c = c * alphabet_size_ + a;
  }
  return c;
}

std::string SlidingRule::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * table_.size());
  for (Letter v : table_) {
    out.push_back(kDigits[v >> 4]);
    out.push_back(kDigits[v & 15]);
  }
  return out;
}

SlidingRule SlidingRule::from_hex(std::size_t alphabet_size, std::size_t radius,
                                  const std::string& hex) {
  SlidingRule r(alphabet_size, radius);
  if (hex.size() != 2 * r.table_.size())
    throw PreconditionError("rule table has " + std::to_string(hex.size()) + " hex digits, expected " +
                            std::to_string(2 * r.table_.size()));
  auto digit = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
    throw PreconditionError(std::string("invalid hex digit '") + c + "' in rule table");
  };
  for (std::size_t i = 0; i < r.table_.size(); ++i) {
    auto v = static_cast<Letter>(digit(hex[2 * i]) * 16 + digit(hex[2 * i + 1]));
    if (v != kUndefinedLetter && v >= alphabet_size)
      throw PreconditionError("rule value outside the alphabet at entry " + std::to_string(i));
    r.table_[i] = v;
  }
  return r;
}

std::string to_string(AutStatus s) {
  switch (s) {
    case AutStatus::certified_total: return "certified-total";
    case AutStatus::certified_individual: return "certified-individual";
    case AutStatus::candidate: return "candidate";
  }
  return "candidate";
}

std::size_t AutomorphismDescriptor::reach() const {
  return rule.radius() + static_cast<std::size_t>(std::abs(shift));
}

std::size_t AutomorphismDescriptor::inverse_reach() const {
  if (!inverse) throw PreconditionError("automorphism has no recorded inverse");
  return inverse->radius() + static_cast<std::size_t>(std::abs(inverse_shift));
}

AutomorphismDescriptor shift_descriptor(std::size_t alphabet_size, std::int64_t k) {
  AutomorphismDescriptor d;
  d.shift = k;
  d.rule = SlidingRule::identity(alphabet_size);
  d.status = AutStatus::certified_total;
  d.inverse = d.rule;
  d.inverse_shift = -k;
  d.shift_power = true;
  return d;
}

AutomorphismDescriptor letter_descriptor(const std::vector<Letter>& map) {
  std::vector<Letter> inv(map.size(), kUndefinedLetter);
  for (std::size_t a = 0; a < map.size(); ++a) {
    if (map[a] >= map.size() || inv[map[a]] != kUndefinedLetter)
      throw PreconditionError("letter map is not a bijection");
    inv[map[a]] = static_cast<Letter>(a);
  }
  AutomorphismDescriptor d;
  d.rule = SlidingRule::letter_map(map);
  d.inverse = SlidingRule::letter_map(inv);
  d.status = AutStatus::certified_total;
  d.shift_power = std::is_sorted(map.begin(), map.end());
  return d;
}

AutomorphismDescriptor inverse_of(const AutomorphismDescriptor& d) {
  if (!d.inverse) throw PreconditionError("automorphism has no recorded inverse");
  AutomorphismDescriptor r = d;
  std::swap(r.rule, *r.inverse);
  std::swap(r.shift, r.inverse_shift);
  return r;
}

Word evaluate(const SlidingRule& rule, std::int64_t shift, std::span<const Letter> w,
              std::size_t reach) {
  auto out = try_evaluate(rule, shift, w, reach);
  if (!out) throw PreconditionError("word contains a window outside the rule's domain");
  return *out;
}

FiniteGroup QuotientGroup::as_group() const { return FiniteGroup(table, 0); }

QuotientSummary QuotientGroup::summary() const {
  FiniteGroup g = as_group();
  return {g.order(), g.is_abelian(), g.element_orders(), iso_label(g)};
}

std::vector<AutomorphismDescriptor> QuotientGroup::descriptors() const {
  std::vector<AutomorphismDescriptor> out;
  for (const auto& e : elements) {
    out.push_back(letter_descriptor(e));
    out.back().status = status;
  }
  return out;
}

QuotientGroup letter_automorphisms(const FactorLanguage& lang, std::size_t aperiodic_cutoff) {
  const Substitution& s = lang.substitution();
  if (!s.flags().primitive) throw PreconditionError("substitution is not primitive");
  if (!s.flags().bijective) throw PreconditionError("substitution is not bijective");
  if (is_eventually_periodic(lang, aperiodic_cutoff).periodic)
    throw PreconditionError("language is eventually periodic");
  const std::size_t q = s.size();
  QuotientGroup out;
  for (std::size_t b = 0; b < q; ++b) {
    std::vector<Letter> map(q, kUndefinedLetter);
    map[0] = static_cast<Letter>(b);
    std::vector<Letter> todo{0};
    bool ok = true;
    while (ok && !todo.empty()) {
      Letter a = todo.back();
      todo.pop_back();
      const Word& from = s.image(a);
      const Word& to = s.image(map[a]);
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (map[from[i]] == kUndefinedLetter) {
          map[from[i]] = to[i];
          todo.push_back(from[i]);
        } else if (map[from[i]] != to[i]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok || std::count(map.begin(), map.end(), kUndefinedLetter) != 0) continue;
    std::vector<Letter> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    out.elements.push_back(std::move(map));
  }
  const std::size_t n = out.elements.size();
  out.table.assign(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Letter> comp(q);
      for (std::size_t a = 0; a < q; ++a) comp[a] = out.elements[i][out.elements[j][a]];
      auto it = std::find(out.elements.begin(), out.elements.end(), comp);
      if (it == out.elements.end()) throw PreconditionError("letter automorphisms are not closed");
      out.table[i][j] = static_cast<std::uint32_t>(it - out.elements.begin());
    }
  return out;
}

std::size_t SearchResult::nontrivial() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const auto& d) { return !d.shift_power; }));
}

namespace {

struct RuleSpace {
  const FactorLanguage* lang;
  std::size_t q, r, depth;
  std::vector<std::size_t> codes;                 // per word of length 2r+1
  // Words of length 2r+2..K as lists of window indices, filed under the
  // largest index so they are checked as soon as every window is assigned.
  std::vector<std::vector<std::vector<std::size_t>>> constraints;

  SlidingRule rule_for(const std::vector<Letter>& values) const {
    SlidingRule rule(q, r);
    for (std::size_t i = 0; i < values.size(); ++i) rule.set_code(codes[i], values[i]);
    return rule;
  }

  bool consistent(const std::vector<Letter>& values, std::size_t t) const {
    Word img;
    for (const auto& windows : constraints[t]) {
      img.clear();
      for (std::size_t i : windows) img.push_back(values[i]);
      if (!lang->contains(img)) return false;
    }
    return true;
  }

  // Images of L_m must lie in, and cover, L_{m-2r}.
  bool passes(const SlidingRule& rule) const {
    for (std::size_t m = 2 * r + 1; m <= depth; ++m) {
      std::vector<Word> images;
      for (const auto& w : lang->factors(m)) {
        auto img = try_evaluate(rule, 0, w, r);
        if (!img || !lang->contains(*img)) return false;
        images.push_back(std::move(*img));
      }
      std::sort(images.begin(), images.end());
      images.erase(std::unique(images.begin(), images.end()), images.end());
      if (images.size() != lang->complexity(m - 2 * r)) return false;
    }
    return true;
  }

  void dfs(std::vector<Letter>& values, std::size_t t, std::vector<SlidingRule>& out) const {
    if (t == codes.size()) {
      SlidingRule rule = rule_for(values);
      if (passes(rule)) out.push_back(std::move(rule));
      return;
    }
    for (std::size_t v = 0; v < q; ++v) {
      values[t] = static_cast<Letter>(v);
      if (consistent(values, t)) dfs(values, t + 1, out);
    }
  }

  void prefixes(std::vector<Letter>& values, std::size_t t, std::size_t stop,
                std::vector<std::vector<Letter>>& out) const {
    if (t == stop) {
      out.push_back(values);
      return;
    }
    for (std::size_t v = 0; v < q; ++v) {
      values[t] = static_cast<Letter>(v);
      if (consistent(values, t)) prefixes(values, t + 1, stop, out);
    }
  }
};

std::optional<std::pair<SlidingRule, std::int64_t>> find_inverse(const FactorLanguage& lang,
                                                                  const SlidingRule& rule,
                                                                  const Word& x,
                                                                  std::size_t max_radius) {
  const std::size_t r = rule.radius();
  const auto y = try_evaluate(rule, 0, x, r);
  if (!y) return std::nullopt;
  for (std::size_t rr = 0; rr <= max_radius; ++rr) {
    const auto& domain = lang.factors(2 * rr + 1);
    const auto span = static_cast<std::int64_t>(r + rr);
    for (std::int64_t a = 0; a <= span; ++a)
      for (std::int64_t s : {-a, a}) {
        if (a == 0 && s > 0) continue;
        SlidingRule inv(rule.alphabet_size(), rr);
        bool ok = y->size() >= 2 * rr + 1;
        for (std::size_t c = rr; ok && c + rr < y->size(); ++c) {
          const std::int64_t p = static_cast<std::int64_t>(c + r) - s;
          if (p < 0 || p >= static_cast<std::int64_t>(x.size())) continue;
          const std::size_t code = inv.code(std::span<const Letter>(*y).subspan(c - rr, 2 * rr + 1));
          const Letter want = x[static_cast<std::size_t>(p)];
          const Letter have = inv.table()[code];
          if (have == kUndefinedLetter) inv.set_code(code, want);
          else if (have != want) ok = false;
        }
        if (!ok) continue;
        for (const auto& w : domain)
          if (inv.at(w) == kUndefinedLetter) ok = false;
        if (!ok) continue;
        const std::size_t reach = rr + static_cast<std::size_t>(a);
        auto z = try_evaluate(inv, s, x, reach);
        if (!z) continue;
        auto back = try_evaluate(rule, 0, *z, r);
        if (!back) continue;
        for (std::size_t i = 0; ok && i < back->size(); ++i) ok = (*back)[i] == x[i + reach + r];
        if (ok) return std::make_pair(inv, s);
      }
  }
  return std::nullopt;
}

}  // namespace

SearchResult search_automorphisms(const FactorLanguage& lang, const SearchOptions& opts) {
  const std::size_t q = lang.alphabet().size();
  const std::size_t r = opts.radius;
  SearchResult res;
  res.radius = r;
  res.check_depth = opts.check_depth == 0 ? 4 * r + 6 : opts.check_depth;
  res.inverse_radius = opts.inverse_radius.value_or(2 * r);
  if (res.check_depth < 2 * r + 1) throw PreconditionError("check depth must be at least 2r+1");
  if (ipow(q, 2 * r + 1, opts.rule_space_cap) > opts.rule_space_cap)
    throw CapExceeded("rule space " + std::to_string(q) + "^" + std::to_string(2 * r + 1) +
                      " exceeds the cap of " + std::to_string(opts.rule_space_cap));

  RuleSpace space{&lang, q, r, res.check_depth, {}, {}};
  const auto& words = lang.factors(2 * r + 1);
  SlidingRule coder(q, r);
  for (const auto& w : words) space.codes.push_back(coder.code(w));
  space.constraints.resize(words.size());
  auto index = [&](std::span<const Letter> w) {
    auto it = std::lower_bound(words.begin(), words.end(), Word(w.begin(), w.end()));
    return static_cast<std::size_t>(it - words.begin());
  };
  for (std::size_t m = 2 * r + 2; m <= res.check_depth; ++m)
    for (const auto& u : lang.factors(m)) {
      std::vector<std::size_t> windows;
      for (std::size_t i = 0; i + 2 * r + 1 <= m; ++i)
        windows.push_back(index(std::span<const Letter>(u).subspan(i, 2 * r + 1)));
      space.constraints[*std::max_element(windows.begin(), windows.end())].push_back(
          std::move(windows));
    }

  std::size_t split = 0;
  for (std::size_t combos = 1; split < words.size() && combos < 64; ++split) combos *= q;
  std::vector<Letter> values(words.size(), 0);
  std::vector<std::vector<Letter>> starts;
  space.prefixes(values, 0, split, starts);

  std::vector<SlidingRule> found;
  if (opts.execution == Execution::serial) {
    for (auto start : starts) {
      start.resize(words.size(), 0);
      space.dfs(start, split, found);
    }
  } else {
#pragma omp parallel
    {
      std::vector<SlidingRule> local;
#pragma omp for schedule(dynamic)
      for (std::size_t i = 0; i < starts.size(); ++i) {
        std::vector<Letter> start = starts[i];
        start.resize(words.size(), 0);
        space.dfs(start, split, local);
      }
#pragma omp critical
      found.insert(found.end(), std::make_move_iterator(local.begin()),
                   std::make_move_iterator(local.end()));
    }
  }
  std::sort(found.begin(), found.end());
  res.rules_passing = found.size();

  const std::size_t reach = 4 * (r + res.inverse_radius) + 1;
  const Word x = lang.covering_word(std::max({res.check_depth, 6 * r + 1, reach}));
  const Word identity_image(x.begin() + static_cast<std::ptrdiff_t>(r),
                            x.end() - static_cast<std::ptrdiff_t>(r));
  std::vector<Word> images;
  for (auto& rule : found) {
    Word y = evaluate(rule, 0, x, r);
    bool seen = false;
    for (const auto& other : images)
      if (shift_between(y, other, res.check_depth / 2)) {
        seen = true;
        break;
      }
    if (seen) continue;
    AutomorphismDescriptor d;
    d.rule = rule;
    d.shift_power = shift_between(y, identity_image, res.check_depth / 2).has_value();
    if (auto inv = find_inverse(lang, rule, x, res.inverse_radius)) {
      d.inverse = inv->first;
      d.inverse_shift = inv->second;
      d.status = AutStatus::certified_individual;
    }
    images.push_back(std::move(y));
    res.classes.push_back(std::move(d));
  }
  return res;
}

ComponentAction aut_action_on_components(const QuotientGroup& quotient,
                                         const AsymptoticReport& components) {
  ComponentAction act;
  const auto& comps = components.components;
  for (const auto& f : quotient.elements) {
    std::vector<std::size_t> perm(comps.size(), comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      Word tail = comps[c].tail;
      for (auto& a : tail) a = f[a];
      std::vector<Letter> branches;
      for (Letter b : comps[c].branches) branches.push_back(f[b]);
      std::sort(branches.begin(), branches.end());
      std::size_t matches = 0;
      for (std::size_t d = 0; d < comps.size(); ++d) {
        std::vector<Letter> target = comps[d].branches;
        std::sort(target.begin(), target.end());
        if (comps[d].tail == tail && target == branches) {
          perm[c] = d;
          ++matches;
        }
      }
      if (matches != 1) {
        act.decided = false;
        act.note = "tail of component " + std::to_string(c) + " matched " +
                   std::to_string(matches) + " components";
      }
    }
    act.permutations.push_back(std::move(perm));
  }
  if (!act.decided) {
    act.homomorphism = act.free = false;
    return act;
  }
  const std::size_t n = quotient.elements.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < comps.size(); ++c)
        if (act.permutations[quotient.table[i][j]][c] !=
            act.permutations[i][act.permutations[j][c]])
          act.homomorphism = false;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (act.permutations[i][c] == c) act.free = false;
  return act;
}

BallGrowth ball_growth(const FactorLanguage& lang,
                       const std::vector<AutomorphismDescriptor>& generators, std::size_t n,
                       std::size_t state_cap) {
  if (n == 0) throw PreconditionError("ball radius must be at least 1");
  if (generators.empty()) throw PreconditionError("no generators given");
  std::vector<AutomorphismDescriptor> moves;
  for (const auto& g : generators) {
    if (!g.inverse) throw PreconditionError("generators need certified inverses");
    moves.push_back(g);
    moves.push_back(inverse_of(g));
  }
  BallGrowth out;
  out.n = n;
  for (const auto& m : moves) out.radius = std::max(out.radius, m.reach());
  const std::size_t r = out.radius;
  const std::size_t span = 2 * n * r + 1;

  try {
    out.visiting = visiting_time(lang, span, state_cap).value;
    if (*out.visiting >= 2 * r) out.bound = lang.complexity(*out.visiting - 2 * r);
  } catch (const CapExceeded& e) {
    out.note = std::string("bound unavailable: ") + e.what();
  }

  const Word host = lang.covering_word(span);
  const Word w = shortest_covering_factor(host, lang.factors(span)).value_or(host);
  out.evaluation_length = w.size();

  const SlidingRule id = SlidingRule::identity(lang.alphabet().size());
  std::set<std::pair<Word, bool>> level{{w, false}};
  for (std::size_t step = 0; step < n; ++step) {
    std::set<std::pair<Word, bool>> next;
    for (const auto& [img, used] : level) {
      next.insert({evaluate(id, 0, img, r), used});
      for (const auto& m : moves) next.insert({evaluate(m.rule, m.shift, img, r), true});
    }
    level = std::move(next);
  }
  std::set<Word> distinct;
  for (const auto& [img, used] : level)
    if (used) distinct.insert(img);
  out.count = distinct.size();
  if (out.bound) out.within_bound = out.count <= *out.bound;
  return out;
}

}  // namespace subshift
