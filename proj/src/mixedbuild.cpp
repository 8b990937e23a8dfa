#include "subshift/mixedbuild.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "subshift/error.hpp"

namespace subshift {

struct GrowthFunction::Node {
  enum class Kind { number, variable, add, multiply, power, log } kind;
  long double value = 0;
  std::shared_ptr<const Node> left, right;
};

namespace {

using NodePtr = std::shared_ptr<const GrowthFunction::Node>;
using Kind = GrowthFunction::Node::Kind;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr, long double v = 0) {
  return std::make_shared<const GrowthFunction::Node>(GrowthFunction::Node{k, v, std::move(l), std::move(r)});
}

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("growth function at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  NodePtr sum() {
    NodePtr e = product();
    while (eat('+')) e = make(Kind::add, e, product());
    return e;
  }
  NodePtr product() {
    NodePtr e = power();
    while (eat('*')) e = make(Kind::multiply, e, power());
    return e;
  }
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Kind::power, base, power());
    return base;
  }
  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      NodePtr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long double v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        v = v * 10 + (s_[pos_++] - '0');
      return make(Kind::number, nullptr, nullptr, v);
    }
    if (s_.compare(pos_, 3, "log") == 0) {
      pos_ += 3;
      if (!eat('(')) fail("expected '(' after log");
      NodePtr e = sum();
      if (!eat(')')) fail("expected ')'");
      return make(Kind::log, e);
    }
    if (s_[pos_] == 'n') {
      ++pos_;
      return make(Kind::variable);
    }
    fail("unexpected '" + std::string(1, s_[pos_]) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

long double eval(const GrowthFunction::Node& node, long double n) {
  switch (node.kind) {
    case Kind::number: return node.value;
    case Kind::variable: return n;
    case Kind::add: return eval(*node.left, n) + eval(*node.right, n);
    case Kind::multiply: return eval(*node.left, n) * eval(*node.right, n);
    case Kind::power: return std::pow(eval(*node.left, n), eval(*node.right, n));
    case Kind::log: return std::log(eval(*node.left, n));
  }
  return 0;
}

// Lyndon words over {0,1} whose length divides the order, concatenated in
// lexicographic order: the least cyclic De Bruijn sequence.
class DeBruijnStream {
 public:
  explicit DeBruijnStream(std::size_t order) : order_(order), word_{-1} {}

  Letter next() {
    while (pos_ == pending_.size()) advance();
    return pending_[pos_++];
  }

 private:
  void advance() {
    pending_.clear();
    pos_ = 0;
    if (word_.empty()) throw PreconditionError("De Bruijn sequence exhausted");
    ++word_.back();
    const std::size_t m = word_.size();
    if (order_ % m == 0)
      for (int c : word_) pending_.push_back(static_cast<Letter>(c));
    while (word_.size() < order_) word_.push_back(word_[word_.size() - m]);
    while (!word_.empty() && word_.back() == 1) word_.pop_back();
  }

  std::size_t order_;
  std::vector<int> word_;
  Word pending_;
  std::size_t pos_ = 0;
};

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

Substitution cube() {
  Substitution rho(Alphabet::of_size(2), {{0, 1}, {1, 0}});
  return power(rho, 3);
}

Word apply_prefix(const Substitution& s, std::span<const Letter> w, std::uint64_t n) {
  Word out;
  for (Letter a : w) {
    if (out.size() >= n) break;
    const Word& img = s.image(a);
    const auto take = std::min<std::uint64_t>(img.size(), n - out.size());
    out.insert(out.end(), img.begin(), img.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

Word apply_prefix(const DeBruijnSubstitution& s, std::span<const Letter> w, std::uint64_t n) {
  Word out;
  for (Letter a : w) {
    if (out.size() >= n) break;
    Word img = s.image_prefix(a, n - out.size());
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

// The first n letters of cube tau_1 ... cube tau_stage (seed), or of
// cube tau_1 ... tau_{stage} cube (seed) when end_with_cube is set.
Word stage_word(const std::vector<DeBruijnSubstitution>& taus, std::size_t stage,
                const Word& seed, std::uint64_t n, bool end_with_cube = false) {
  static const Substitution rho3 = cube();
  Word w = seed;
  if (end_with_cube) w = apply_prefix(rho3, w, n);
  for (std::size_t i = stage; i-- > 0;) {
    w = apply_prefix(taus[i], w, n);
    w = apply_prefix(rho3, w, n);
  }
  if (w.size() > n) w.resize(n);
  return w;
}

std::vector<std::uint64_t> window_codes(std::span<const Letter> w, std::size_t n) {
  std::vector<std::uint64_t> codes;
  if (w.size() < n) return codes;
  const std::uint64_t mask = n >= 64 ? ~0ull : (1ull << n) - 1;
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    code = ((code << 1) | w[i]) & mask;
    if (i + 1 >= n) codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

std::string format_real(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

}  // namespace

GrowthFunction GrowthFunction::parse(const std::string& text) {
  GrowthFunction f;
  f.text_ = text;
  f.root_ = ExpressionParser(f.text_).parse();
  return f;
}

long double GrowthFunction::operator()(long double n) const { return eval(*root_, n); }

DeBruijnSubstitution::DeBruijnSubstitution(std::size_t order)
    : order_(order), effective_(std::max<std::size_t>(order, 2)) {
  if (order == 0) throw PreconditionError("De Bruijn order must be at least 1");
  if (order > 62) throw CapExceeded("De Bruijn order above 62");
  if (effective_ <= kCachedOrder) {
    auto images = std::make_shared<std::array<Word, 2>>();
    (*images)[0] = generate(0, length());
    (*images)[1] = generate(1, length());
    cache_ = std::move(images);
  }
}

Word DeBruijnSubstitution::image_prefix(Letter a, std::uint64_t n) const {
  if (a > 1) throw PreconditionError("De Bruijn substitutions are binary");
  if (cache_) {
    const Word& img = (*cache_)[a];
    return Word(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(std::min<std::uint64_t>(n, img.size())));
  }
  return generate(a, n);
}

Word DeBruijnSubstitution::generate(Letter a, std::uint64_t n) const {
  const std::uint64_t len = std::min(n, length());
  const std::uint64_t cycle = std::uint64_t{1} << effective_;
  DeBruijnStream stream(effective_);
  Word out;
  out.reserve(len);
  // Past the end of the cycle the wraparound letters are the leading zeros.
  if (a == 1) stream.next();
  for (std::uint64_t j = 0; j < len; ++j) out.push_back(j + a < cycle ? stream.next() : Letter{0});
  return out;
}

Substitution DeBruijnSubstitution::materialize(std::uint64_t max_length) const {
  if (length() > max_length)
    throw CapExceeded("De Bruijn image of length " + std::to_string(length()) +
                      " exceeds " + std::to_string(max_length));
  return Substitution(Alphabet::of_size(2), {image_prefix(0, length()), image_prefix(1, length())});
}

bool covers_all_binary_words(std::span<const Letter> w, std::size_t k) {
  if (k > 30) throw CapExceeded("coverage scan above order 30");
  return window_codes(w, k).size() == (std::size_t{1} << k);
}

StagePlan plan_stages(const GrowthFunction& phi, std::size_t stage_count, std::uint64_t budget) {
  if (stage_count == 0) throw PreconditionError("at least one stage is required");
  if (budget == 0) throw PreconditionError("budget must be positive");
  StagePlan plan{phi, {}, budget, true};
  std::uint64_t outer = 1;
  std::size_t k = 1;
  for (std::size_t i = 0; i < stage_count; ++i) {
    if (outer == std::numeric_limits<std::uint64_t>::max())
      throw CapExceeded("stage " + std::to_string(i + 1) + " lengths exceed 64 bits");
    Stage st;
    st.outer_length = outer;
    st.ell = mul_sat(2, outer);
    while (std::ldexp(1.0L, static_cast<int>(k)) <
           phi(static_cast<long double>(k) * 8.0L * static_cast<long double>(outer))) {
      if (++k > 62) throw PreconditionError("no order up to 62 satisfies the growth inequality");
    }
    st.k = k;
    st.m = mul_sat(k, mul_sat(8, outer));
    st.phi_m = phi(static_cast<long double>(st.m));
    st.tau_length = DeBruijnSubstitution(k).length();
    outer = mul_sat(outer, mul_sat(8, st.tau_length));
    plan.stages.push_back(st);
  }
  std::uint64_t last = 0;
  for (const auto& st : plan.stages) {
    if (!(last < st.ell && st.ell < st.m)) plan.interleaved = false;
    last = st.m;
  }
  return plan;
}

bool MixedReport::all_pass() const {
  bool ok = prefix_property == Verdict::pass && recurrence == Verdict::pass && coverage_ok;
  for (const auto& c : checkpoints) ok = ok && c.verdict == Verdict::pass;
  for (const auto& w : window_checks) ok = ok && w.verdict == Verdict::pass;
  return ok;
}

MixedReport materialize_and_check(const StagePlan& plan) {
  MixedReport rep;
  const std::size_t s = plan.stages.size();
  const std::uint64_t budget = plan.budget;
  std::vector<DeBruijnSubstitution> taus;
  for (const auto& st : plan.stages) taus.emplace_back(st.k);

  for (const auto& t : taus)
    if (t.length() <= budget) {
      rep.coverage_ok = rep.coverage_ok && covers_all_binary_words(t.image_prefix(0, budget), t.effective_order()) &&
                        covers_all_binary_words(t.image_prefix(1, budget), t.effective_order()) &&
                        t.image_prefix(0, 1) == Word{0} && t.image_prefix(1, 1) == Word{0} &&
                        t.image_prefix(0, budget) != t.image_prefix(1, budget);
    }

  // Prefix of the limit point: the image of 0 under the full composition is
  // shared by every later stage.
  const Stage& lastst = plan.stages.back();
  const std::uint64_t certified = mul_sat(lastst.outer_length, mul_sat(8, lastst.tau_length));
  const std::uint64_t xlen = std::min(budget, certified);
  const Word seed = [&] {
    Word w{0, 1, 1, 0};
    w.resize(std::max<std::uint64_t>(4, std::min<std::uint64_t>(budget, 64)), 0);
    return w;
  }();
  const Word x = stage_word(taus, s, seed, xlen);
  rep.prefix_length = x.size();

  for (std::size_t i = 0; i < s; ++i) {
    const Stage& st = plan.stages[i];
    const std::string idx = std::to_string(i + 1);

    Checkpoint lo;
    lo.name = "l" + idx;
    lo.length = st.ell;
    lo.relation = "<=";
    lo.target = 3.0L * static_cast<long double>(st.ell);
    // cube(0110 0...) is eventually periodic with preperiod 24 and period 8,
    // so its image under the first i stages has every window of length
    // 2 * outer within the image of 01100.
    if (mul_sat(40, st.outer_length) > budget) {
      lo.detail = "needs " + std::to_string(mul_sat(40, st.outer_length)) + " symbols, budget " +
                  std::to_string(budget);
    } else {
      const Word w = stage_word(taus, i, Word{0, 1, 1, 0, 0}, std::numeric_limits<std::uint64_t>::max(), true);
      lo.symbols = w.size();
      lo.count = count_distinct_windows({w}, st.ell);
      lo.verdict = static_cast<long double>(*lo.count) <= lo.target ? Verdict::pass : Verdict::fail;
      lo.detail = "exact count on the eventually periodic stage point";
    }
    rep.checkpoints.push_back(lo);

    Checkpoint hi;
    hi.name = "m" + idx;
    hi.length = st.m;
    hi.relation = ">=";
    hi.target = st.phi_m;
    if (x.size() < st.m) {
      hi.symbols = x.size();
      hi.detail = "materialized prefix (" + std::to_string(x.size()) +
                  " symbols) is shorter than the window; the construction gives at least 2^" +
                  std::to_string(st.k) + " = " + format_real(std::ldexp(1.0L, static_cast<int>(st.k))) +
                  " words";
    } else {
      std::uint64_t len = std::min<std::uint64_t>(x.size(), std::max<std::uint64_t>(4 * st.m, 1 << 16));
      while (true) {
        hi.symbols = len;
        hi.count = count_distinct_windows({Word(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(len))}, st.m);
        if (static_cast<long double>(*hi.count) >= hi.target) {
          hi.verdict = Verdict::pass;
          hi.detail = "lower bound from a prefix of the limit point";
          break;
        }
        if (len == x.size()) {
          hi.detail = "prefix count below the target; a longer prefix may still reach it";
          break;
        }
        len = std::min<std::uint64_t>(x.size(), 4 * len);
      }
    }
    rep.checkpoints.push_back(hi);
  }

  // Each stage image of 0 starts every later stage point.
  rep.prefix_property = Verdict::pass;
  for (std::size_t n = 1; n <= s; ++n) {
    const Word head = stage_word(taus, n, Word{0}, budget);
    for (std::size_t later = n; later <= std::min(n + 1, s); ++later) {
      const Word y = stage_word(taus, later, seed, head.size());
      if (!std::equal(head.begin(), head.end(), y.begin(), y.end()))
        rep.prefix_property = Verdict::fail;
    }
  }

  // Short words of the prefix already occur in cube tau_1 ... cube tau_N (01).
  rep.recurrence = Verdict::inconclusive;
  rep.recurrence_detail = "no stage word fits the budget";
  for (std::size_t n = 1; n <= s; ++n) {
    const std::uint64_t need = mul_sat(2, mul_sat(plan.stages[n - 1].outer_length, mul_sat(8, taus[n - 1].length())));
    if (need > budget) break;
    const Word w = stage_word(taus, n, Word{0, 1}, need);
    bool all = true;
    for (std::size_t len = 1; len <= 8 && all; ++len) {
      auto in_prefix = window_codes(x, len);
      auto in_stage = window_codes(w, len);
      all = std::includes(in_stage.begin(), in_stage.end(), in_prefix.begin(), in_prefix.end());
    }
    if (all) {
      rep.recurrence = Verdict::pass;
      rep.recurrence_detail = "words of length <= 8 occur in stage " + std::to_string(n) + " image of 01";
      break;
    }
    rep.recurrence = Verdict::fail;
    rep.recurrence_detail = "stage " + std::to_string(n) + " image of 01 misses a short word";
  }

  // The window checks for the first stage pair.
  if (taus[0].length() <= budget) {
    const Substitution tau1 = taus[0].materialize(budget);
    Word pre{0, 1, 1, 0};
    pre.resize(16, 0);
    rep.window_checks.push_back(check_window_equality(cube(), tau1, pre, pre));
    rep.window_checks.push_back(check_doubled_window_bound(cube(), pre));
  }
  return rep;
}

}  // namespace subshift
