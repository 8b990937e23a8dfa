#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "subshift/autgroup.hpp"
#include "subshift/error.hpp"

using namespace subshift;

namespace {

// All letter permutations commuting with the substitution, by brute force.
std::set<std::vector<Letter>> commutant_oracle(const Substitution& s) {
  std::vector<Letter> perm(s.size());
  std::iota(perm.begin(), perm.end(), Letter{0});
  std::set<std::vector<Letter>> out;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < s.size() && ok; ++a) {
      Word lhs = s.image(perm[a]);
      Word rhs = s.image(static_cast<Letter>(a));
      for (auto& c : rhs) c = perm[c];
      ok = lhs == rhs;
    }
    if (ok) out.insert(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// Elements of Z x Z/2 reachable by 1..n steps of (+-1, 0) or (0, 1).
std::size_t z_times_z2_ball(int n) {
  std::set<std::pair<int, int>> level{{0, 0}}, all;
  for (int step = 0; step < n; ++step) {
    std::set<std::pair<int, int>> next;
    for (auto [k, e] : level)
      for (auto [dk, de] : {std::pair{1, 0}, {-1, 0}, {0, 1}}) next.insert({k + dk, (e + de) % 2});
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  return all.size();
}

Substitution cyclic3() {
  return Substitution(Alphabet::of_size(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
}

}  // namespace

TEST_CASE("letter automorphisms agree with the permutation oracle") {
  for (auto s : {oracle::fixture_subst("tm.json"), oracle::fixture_subst("trivial_commutant.json"),
                 cyclic3()}) {
    auto lang = FactorLanguage::from_substitution(s);
    auto quotient = letter_automorphisms(lang);
    std::set<std::vector<Letter>> got(quotient.elements.begin(), quotient.elements.end());
    CHECK(got == commutant_oracle(s));
    std::vector<Letter> id(s.size());
    std::iota(id.begin(), id.end(), Letter{0});
    CHECK(quotient.elements.front() == id);
    CHECK_NOTHROW(quotient.as_group());
  }
}

TEST_CASE("thue-morse quotient is Z2") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto q = letter_automorphisms(lang);
  auto summary = q.summary();
  CHECK(summary.order == 2);
  CHECK(summary.iso_label == "Z2");
  CHECK(q.elements[1] == std::vector<Letter>{1, 0});
  auto trivial = FactorLanguage::from_substitution(oracle::fixture_subst("trivial_commutant.json"));
  CHECK(letter_automorphisms(trivial).summary().order == 1);
  CHECK_THROWS_AS(letter_automorphisms(FactorLanguage::from_substitution(oracle::fixture_subst("fib.json"))),
                  PreconditionError);
}

TEST_CASE("sliding rules") {
  SlidingRule flip = SlidingRule::letter_map({1, 0});
  CHECK(evaluate(flip, 0, Word{0, 1, 1}, 0) == Word{1, 0, 0});
  CHECK(evaluate(flip, 1, Word{0, 1, 1, 0}, 1) == Word{0, 1});
  CHECK(flip.to_hex() == "0100");
  CHECK(SlidingRule::from_hex(2, 0, "0100") == flip);
  CHECK_THROWS_AS(SlidingRule::from_hex(2, 0, "01"), PreconditionError);
  CHECK_THROWS_AS(SlidingRule::from_hex(2, 0, "0107"), PreconditionError);
  SlidingRule partial(2, 1);
  partial.set(Word{0, 1, 1}, 1);
  CHECK(partial.to_hex().substr(0, 8) == "ffffff01");
  CHECK_THROWS_AS(evaluate(partial, 0, Word{0, 0, 0}, 1), PreconditionError);
}

TEST_CASE("search finds the flip on thue-morse at radius zero") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto res = search_automorphisms(lang, {.radius = 0});
  REQUIRE(res.classes.size() == 2);
  CHECK(res.nontrivial() == 1);
  for (const auto& d : res.classes) CHECK(d.status == AutStatus::certified_individual);
  auto hp = letter_automorphisms(lang);
  CHECK(res.classes.size() == hp.elements.size());
}

TEST_CASE("search finds only shifts on fibonacci and the doubling example") {
  for (const char* name : {"fib.json", "doubling.json"}) {
    auto lang = FactorLanguage::from_substitution(oracle::fixture_subst(name));
    for (std::size_t r = 0; r <= 2; ++r) {
      auto res = search_automorphisms(lang, {.radius = r});
      CHECK(res.nontrivial() == 0);
      CHECK(res.classes.size() == 1);
      CHECK(res.rules_passing == 2 * r + 1);
    }
  }
}

TEST_CASE("radius one search on thue-morse") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto res = search_automorphisms(lang, {.radius = 1});
  CHECK(res.classes.size() == 2);
  CHECK(res.rules_passing == 6);
}

TEST_CASE("serial and parallel search agree") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  for (std::size_t r = 0; r <= 2; ++r) {
    auto a = search_automorphisms(lang, {.radius = r, .execution = Execution::serial});
    auto b = search_automorphisms(lang, {.radius = r, .execution = Execution::parallel});
    CHECK(a.rules_passing == b.rules_passing);
    REQUIRE(a.classes.size() == b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) CHECK(a.classes[i].rule == b.classes[i].rule);
  }
}

TEST_CASE("search cap") {
  auto lang = FactorLanguage::from_substitution(cyclic3());
  CHECK_NOTHROW(search_automorphisms(lang, {.radius = 1}));
  CHECK_THROWS_AS(search_automorphisms(lang, {.radius = 3}), CapExceeded);
  CHECK_THROWS_AS(search_automorphisms(lang, {.radius = 1, .check_depth = 2}), PreconditionError);
}

TEST_CASE("action on components") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto act = aut_action_on_components(letter_automorphisms(lang), asymptotic_components(lang));
  REQUIRE(act.decided);
  CHECK(act.permutations[0] == std::vector<std::size_t>{0, 1});
  CHECK(act.permutations[1] == std::vector<std::size_t>{1, 0});
  CHECK(act.homomorphism);
  CHECK(act.free);

  auto c3 = FactorLanguage::from_substitution(cyclic3());
  auto act3 = aut_action_on_components(letter_automorphisms(c3), asymptotic_components(c3));
  CHECK(act3.decided);
  CHECK(act3.free);
  CHECK(act3.homomorphism);
}

TEST_CASE("ball growth matches the group count") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto sigma = shift_descriptor(2, 1);
  auto flip = letter_descriptor({1, 0});
  CHECK(z_times_z2_ball(1) == 3);
  CHECK(z_times_z2_ball(2) == 8);
  for (int n = 1; n <= 4; ++n) {
    auto b = ball_growth(lang, {sigma, flip}, static_cast<std::size_t>(n));
    CHECK(b.count == z_times_z2_ball(n));
    REQUIRE(b.bound);
    CHECK(b.within_bound);
  }
  CHECK(ball_growth(lang, {sigma}, 3).count == 7);
  auto fib = FactorLanguage::from_substitution(oracle::fixture_subst("fib.json"));
  CHECK(ball_growth(fib, {sigma}, 3).count == 7);
}
