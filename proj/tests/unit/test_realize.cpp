#include <doctest.h>

#include "oracles.hpp"
#include "subshift/error.hpp"
#include "subshift/realize.hpp"

using namespace subshift;

TEST_CASE("group substitution construction") {
  auto z2 = group_substitution(cyclic_group(2));
  CHECK(z2.images() == std::vector<Word>{{0, 1}, {1, 0}});
  auto z3 = group_substitution(cyclic_group(3));
  CHECK(z3.images() == std::vector<Word>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  auto s3 = group_substitution(load_group(oracle::fixture("s3.json")));
  CHECK(s3.size() == 6);
  CHECK(s3.uniform_length() == 6);
  CHECK(s3.flags().bijective);
  CHECK(s3.flags().primitive);
  auto trivial = group_substitution(cyclic_group(1));
  CHECK(trivial.images() == std::vector<Word>{{0, 1}, {0}});
}

TEST_CASE("group substitution fixtures match the construction") {
  for (const char* name : {"z2", "z3", "z2xz2", "s3"}) {
    auto g = load_group(oracle::fixture(std::string(name) + ".json"));
    CHECK(oracle::fixture_subst(std::string("tau_") + name + ".json") == group_substitution(g));
  }
}

TEST_CASE("realization of small groups") {
  for (const auto& [name, g] : group_catalog()) {
    if (g.order() > 8) continue;
    CAPTURE(name);
    auto r = verify_realization(g);
    CHECK(r.ok);
    CHECK(r.witness_ok);
    CHECK(r.quotient.elements.size() == g.order());
    if (g.order() > 1) {
      CHECK(r.summary.iso_label == name);
      CHECK(r.components % g.order() == 0);
      CHECK(r.aperiodicity_evidence);
    }
  }
}

TEST_CASE("realization of Z2 x Z2 is abelian of exponent two") {
  auto r = verify_realization(load_group(oracle::fixture("z2xz2.json")));
  CHECK(r.summary.order == 4);
  CHECK(r.summary.abelian);
  CHECK(r.summary.element_orders == std::vector<std::size_t>{1, 2, 2, 2});
}

TEST_CASE("batch realization and cap") {
  std::vector<FiniteGroup> groups{cyclic_group(2), cyclic_group(3), symmetric_group(3)};
  auto serial = verify_realizations(groups, Execution::serial);
  auto parallel = verify_realizations(groups, Execution::parallel);
  REQUIRE(serial.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial[i].witness == parallel[i].witness);
    CHECK(serial[i].components == parallel[i].components);
  }
  CHECK_THROWS_AS(verify_realization(cyclic_group(5), 4), CapExceeded);
}
