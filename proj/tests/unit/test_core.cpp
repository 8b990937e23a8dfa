#include <doctest.h>

#include "oracles.hpp"
#include "subshift/core.hpp"
#include "subshift/error.hpp"
#include "subshift/group.hpp"

using namespace subshift;

TEST_CASE("fixture flags") {
  auto tm = oracle::fixture_subst("tm.json");
  CHECK(tm.flags().constant_length);
  CHECK(tm.flags().primitive);
  CHECK(tm.flags().bijective);
  CHECK(tm.flags().growth_ok);

  auto fib = oracle::fixture_subst("fib.json");
  CHECK_FALSE(fib.flags().constant_length);
  CHECK(fib.flags().primitive);
  CHECK_FALSE(fib.flags().bijective);
  CHECK(fib.flags().growth_ok);

  auto dbl = oracle::fixture_subst("doubling.json");
  CHECK_FALSE(dbl.flags().primitive);
  CHECK(dbl.flags().growth_ok);
}

TEST_CASE("bounded letters are detected") {
  Alphabet ab = Alphabet::of_size(2);
  CHECK_FALSE(Substitution(ab, {{0, 1}, {1}}).flags().growth_ok);
  CHECK_FALSE(Substitution(ab, {{1}, {0}}).flags().growth_ok);
  CHECK(Substitution(ab, {{0, 1}, {0}}).flags().growth_ok);
  Alphabet abc = Alphabet::of_size(3);
  CHECK_FALSE(Substitution(abc, {{1, 2}, {1}, {2}}).flags().growth_ok);
}

TEST_CASE("first and last letter period") {
  CHECK(first_last_letter_period(oracle::fixture_subst("tm.json")) == 2);
  Substitution z3(Alphabet::of_size(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(first_last_letter_period(z3) == 3);
  // The p-th power really has identity first and last letter maps.
  auto sq = power(z3, 3);
  for (Letter a = 0; a < 3; ++a) {
    CHECK(sq.image(a).front() == a);
    CHECK(sq.image(a).back() == a);
  }
}

TEST_CASE("composition agrees with repeated rewriting") {
  auto tm = oracle::fixture_subst("tm.json");
  auto p3 = power(tm, 3);
  CHECK(tm.alphabet().render(p3.image(0)) == "01101001");
  auto strings = oracle::long_iterates(tm, 8);
  CHECK(strings[0] == "abbabaab");
}

TEST_CASE("primitivity against reachability oracle") {
  Alphabet ab = Alphabet::of_size(2);
  CHECK_FALSE(is_primitive(Substitution(ab, {{0, 0}, {1, 1}})));
  CHECK(is_primitive(Substitution(ab, {{1}, {0, 1}})));
  CHECK_FALSE(is_primitive(Substitution(ab, {{1}, {0}})));
}

TEST_CASE("malformed substitutions are rejected") {
  Alphabet ab = Alphabet::of_size(2);
  CHECK_THROWS_AS(Substitution(ab, {{0}, {}}), PreconditionError);
  CHECK_THROWS_AS(Substitution(ab, {{0, 2}, {1}}), PreconditionError);
  CHECK_THROWS_AS(substitution_from_json(nlohmann::json::parse(
                      R"({"alphabet":["0","1"],"rules":{"0":"01"}})")),
                  PreconditionError);
  CHECK_THROWS_AS(substitution_from_json(nlohmann::json::parse(
                      R"({"alphabet":["0","1"],"rules":{"0":"01","1":"12"}})")),
                  PreconditionError);
}

TEST_CASE("group tables are validated") {
  CHECK_NOTHROW(load_group(oracle::fixture("s3.json")));
  CayleyTable bad = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
  CHECK_THROWS_AS(FiniteGroup(bad, 0), PreconditionError);
  // A Latin square with identity that is not associative.
  CayleyTable loop = {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3},
                      {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FiniteGroup(loop, 0), PreconditionError);
}

TEST_CASE("group catalog classes are pairwise non-isomorphic") {
  const auto& cat = group_catalog();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(iso_label(cat[i].group) == cat[i].name);
    for (std::size_t j = i + 1; j < cat.size(); ++j)
      CHECK_FALSE(find_isomorphism(cat[i].group, cat[j].group).has_value());
  }
  CHECK(iso_label(dihedral_group(3)) == "S3");
  CHECK(iso_label(direct_product(cyclic_group(2), cyclic_group(3))) == "Z6");
  auto f = find_isomorphism(load_group(oracle::fixture("s3.json")), symmetric_group(3));
  REQUIRE(f);
  CHECK(is_homomorphism(load_group(oracle::fixture("s3.json")), symmetric_group(3), *f));
}
