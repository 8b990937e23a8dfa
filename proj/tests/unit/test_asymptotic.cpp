#include <doctest.h>

#include "oracles.hpp"
#include "subshift/asymptotic.hpp"
#include "subshift/error.hpp"

using namespace subshift;

TEST_CASE("thue-morse has two asymptotic components") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  auto r = asymptotic_components(lang);
  CHECK(r.period == 2);
  CHECK(r.exact);
  REQUIRE(r.components.size() == 2);
  for (const auto& c : r.components) CHECK(c.branches.size() == 2);
  CHECK(r.components[0].tail.size() == kDefaultTailDepth);
}

TEST_CASE("cyclic group substitution gives a multiple of three components") {
  auto lang = FactorLanguage::from_substitution(
      Substitution(Alphabet::of_size(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  auto r = asymptotic_components(lang);
  CHECK(r.exact);
  CHECK(r.components.size() % 3 == 0);
  CHECK(r.components.size() == 3);
}

TEST_CASE("asymptotic components reject unsuitable inputs") {
  auto fib = FactorLanguage::from_substitution(oracle::fixture_subst("fib.json"));
  CHECK_THROWS_AS(asymptotic_components(fib), PreconditionError);
  auto periodic = FactorLanguage::from_substitution(
      Substitution(Alphabet::of_size(2), {{0, 1}, {0, 1}}));
  CHECK_THROWS_AS(asymptotic_components(periodic), PreconditionError);
}

TEST_CASE("right fixed point tails match the iterates") {
  auto s = oracle::fixture_subst("tm.json");
  OneSidedFixedPoint x(s, 0, 2, Side::right);
  CHECK(x.prefix(8) == Word{0, 1, 1, 0, 1, 0, 0, 1});
  OneSidedFixedPoint y(s, 1, 2, Side::left);
  CHECK(y.prefix(4) == Word{1, 0, 0, 1});
  CHECK_THROWS_AS(OneSidedFixedPoint(s, 0, 1, Side::left), PreconditionError);
}

TEST_CASE("left special tree") {
  auto tm = FactorLanguage::from_substitution(oracle::fixture_subst("tm.json"));
  for (std::size_t n = 5; n <= 30; n += 5) CHECK(left_special_tree(tm, n, n).persistent.size() == 2);

  auto fib = FactorLanguage::from_substitution(oracle::fixture_subst("fib.json"));
  auto t = left_special_tree(fib, 10, 10);
  CHECK(t.persistent.size() == 1);
  for (auto c : t.level_counts) CHECK(c == 1);

  auto periodic = FactorLanguage::from_sequence(Alphabet::of_size(2), Word(64, 0), 64);
  CHECK(left_special_tree(periodic, 4, 4).persistent.empty());
}

TEST_CASE("desubstitution of doubling words") {
  auto lang = FactorLanguage::from_substitution(oracle::fixture_subst("doubling.json"));
  auto parses = desubstitutions(lang, Word{0, 1, 0, 1, 1, 0, 1, 0});
  REQUIRE(parses.size() == 1);
  CHECK(parses[0].preimage == Word{0, 1, 0});
  CHECK(parses[0].offset == 0);
  // A run of ones parses in more than one way.
  CHECK(desubstitutions(lang, Word(6, 1)).size() > 1);
}

TEST_CASE("doubling component report") {
  auto r = verify_doubling_component(20, {{0, 0}, {0, 1, 0, 1, 0}, {1, 1, 0, 1, 1}});
  CHECK(r.forbidden_absent);
  CHECK(r.tails_are_ones);
  CHECK(r.unique_desubstitution);
  CHECK(r.words_checked > 100);
  CHECK(r.ok());
  CHECK_FALSE(verify_doubling_component(8, {}, 3).tails_are_ones);

  // 1010 sits inside the second iterate 010 11 010.
  auto stated = verify_doubling_component(12);
  CHECK_FALSE(stated.forbidden_absent);
  REQUIRE(stated.forbidden.size() == 3);
  CHECK_FALSE(stated.forbidden[0].witness);
  CHECK(stated.forbidden[1].witness);
  CHECK_FALSE(stated.forbidden[2].witness);
}
