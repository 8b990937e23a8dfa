#include <doctest.h>

#include <cmath>
#include <set>

#include "subshift/error.hpp"
#include "subshift/mixedbuild.hpp"

using namespace subshift;

TEST_CASE("growth function grammar") {
  CHECK(GrowthFunction::parse("n^2")(7) == doctest::Approx(49));
  CHECK(GrowthFunction::parse("2*n + 3")(5) == doctest::Approx(13));
  CHECK(GrowthFunction::parse("n*log(n)")(std::exp(1.0L)) == doctest::Approx(std::exp(1.0)));
  CHECK(GrowthFunction::parse("2^3^2")(0) == doctest::Approx(512));
  CHECK(GrowthFunction::parse("(n+1)^2")(2) == doctest::Approx(9));
  CHECK(GrowthFunction::parse(" n ^ 2 ").text() == " n ^ 2 ");
  for (const char* bad : {"", "n^", "2**n", "exp(n)", "(n", "n)", "x"})
    CHECK_THROWS_AS(GrowthFunction::parse(bad), PreconditionError);
}

TEST_CASE("de bruijn substitutions cover every word") {
  for (std::size_t k = 1; k <= 8; ++k) {
    DeBruijnSubstitution db(k);
    auto s = db.materialize(1 << 20);
    CHECK(s.image(0).size() == db.length());
    CHECK(s.image(0).front() == 0);
    CHECK(s.image(1).front() == 0);
    CHECK(s.image(0) != s.image(1));
    for (Letter a : {0, 1}) {
      CHECK(covers_all_binary_words(s.image(a), db.effective_order()));
      CHECK(covers_all_binary_words(s.image(a), k));
    }
  }
  DeBruijnSubstitution two(2);
  CHECK(two.materialize(100).image(0) == Word{0, 0, 1, 1, 0});
  DeBruijnSubstitution big(52);
  auto head = big.image_prefix(0, 53);
  CHECK(Word(head.begin(), head.begin() + 52) == Word(52, 0));
  CHECK(head[52] == 1);
  CHECK_THROWS_AS(big.materialize(1 << 20), CapExceeded);
}

TEST_CASE("stage planning") {
  auto square = plan_stages(GrowthFunction::parse("n^2"), 2);
  REQUIRE(square.stages.size() == 2);
  CHECK(square.stages[0].k == 14);
  CHECK(square.stages[0].ell == 2);
  CHECK(square.stages[0].m == 112);
  CHECK(square.stages[0].tau_length == 16397);
  CHECK(square.stages[1].outer_length == 131176);
  CHECK(square.stages[1].ell == 262352);
  CHECK(square.stages[1].k == 52);
  CHECK(square.stages[1].m == 54569216);
  CHECK(square.interleaved);
  CHECK(plan_stages(GrowthFunction::parse("n"), 1).stages[0].k == 6);
  CHECK(plan_stages(GrowthFunction::parse("n^3"), 1).stages[0].k == 23);
  CHECK_THROWS_AS(plan_stages(GrowthFunction::parse("2^n"), 1), PreconditionError);
  CHECK_THROWS_AS(plan_stages(GrowthFunction::parse("n^2"), 0), PreconditionError);
}

TEST_CASE("single stage construction passes every checkpoint") {
  auto rep = materialize_and_check(plan_stages(GrowthFunction::parse("n"), 1, 1'000'000));
  REQUIRE(rep.checkpoints.size() == 2);
  CHECK(rep.checkpoints[0].count == 4);
  CHECK(rep.checkpoints[0].verdict == Verdict::pass);
  CHECK(rep.checkpoints[1].verdict == Verdict::pass);
  CHECK(*rep.checkpoints[1].count >= 48);
  CHECK(rep.prefix_property == Verdict::pass);
  CHECK(rep.recurrence == Verdict::pass);
  CHECK(rep.coverage_ok);
  REQUIRE(rep.window_checks.size() == 2);
  CHECK(rep.window_checks[0].verdict == Verdict::pass);
  CHECK(rep.window_checks[1].verdict == Verdict::pass);
  CHECK(rep.all_pass());
}

TEST_CASE("two stages with square growth") {
  auto rep = materialize_and_check(plan_stages(GrowthFunction::parse("n^2"), 2));
  REQUIRE(rep.checkpoints.size() == 4);
  CHECK(rep.checkpoints[0].count == 4);
  CHECK(rep.checkpoints[1].verdict == Verdict::pass);
  CHECK(*rep.checkpoints[1].count >= 12544);
  // Frozen from an independent rolling-hash count.
  CHECK(rep.checkpoints[2].count == 786437);
  CHECK(rep.checkpoints[2].verdict == Verdict::pass);
  CHECK(rep.checkpoints[3].verdict == Verdict::inconclusive);
  CHECK(rep.prefix_property == Verdict::pass);
  CHECK(rep.recurrence == Verdict::pass);
  CHECK(rep.prefix_length == 10'000'000);
}
