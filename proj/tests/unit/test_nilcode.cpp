#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "subshift/error.hpp"
#include "subshift/nilcode.hpp"

using namespace subshift;
using boost::multiprecision::cpp_int;

namespace {

using Float200 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<200, boost::multiprecision::digit_base_2>>;

int float_sign(const QuadraticScalar& x) {
  const Float200 alpha = (sqrt(Float200(5)) - 1) / 2;
  const Float200 v = (Float200(x.a) + Float200(x.b) * alpha) / Float200(x.c);
  return v > 0 ? 1 : v < 0 ? -1 : 0;
}

// Direct sum over increasing tuples, divided by V(0..d-1).
cpp_int vandermonde_sum(std::size_t d, std::size_t n) {
  const std::size_t top = n + d - 1;
  std::vector<std::size_t> k(d);
  for (std::size_t i = 0; i < d; ++i) k[i] = i;
  auto vdm = [](const std::vector<std::size_t>& ks) {
    cpp_int v = 1;
    for (std::size_t i = 0; i < ks.size(); ++i)
      for (std::size_t j = i + 1; j < ks.size(); ++j) v *= ks[j] - ks[i];
    return v;
  };
  const cpp_int norm = vdm(k);
  cpp_int total = 0;
  while (true) {
    total += vdm(k);
    std::size_t i = d;
    while (i-- > 0) {
      if (k[i] < top - (d - 1 - i)) break;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    ++k[i];
    for (std::size_t j = i + 1; j < d; ++j) k[j] = k[j - 1] + 1;
  }
  return total / norm;
}

}  // namespace

TEST_CASE("exact sign agrees with 200-bit floats") {
  const auto& f = QuadraticField::golden();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> coef(-1'000'000'000'000, 1'000'000'000'000);
  for (int t = 0; t < 2000; ++t) {
    auto x = QuadraticScalar::make(coef(rng), coef(rng), 1 + (rng() % 1000));
    CHECK(f.sign(x) == float_sign(x));
  }
  // Fibonacci pairs make a + b alpha tiny.
  std::int64_t a = 0, b = 1;
  for (int t = 0; t < 80; ++t) {
    for (int s : {1, -1}) {
      auto x = QuadraticScalar::make(s * a, -s * b, 1);
      CHECK(f.sign(x) == float_sign(x));
      auto y = QuadraticScalar::make(s * b, -s * a, 3);
      CHECK(f.sign(y) == float_sign(y));
    }
    std::int64_t c = a + b;
    a = b;
    b = c;
    if (b > (std::int64_t{1} << 61)) break;
  }
}

TEST_CASE("field arithmetic") {
  const auto& f = QuadraticField::golden();
  const auto alpha = QuadraticScalar::alpha_times(1);
  // alpha^2 = 1 - alpha
  CHECK(f.multiply(alpha, alpha) == QuadraticScalar::make(1, -1, 1));
  auto x = QuadraticScalar::make(3, -7, 5);
  auto y = QuadraticScalar::make(-2, 11, 3);
  CHECK(f.multiply(f.divide(x, y), y) == x);
  CHECK(f.floor(alpha) == 0);
  CHECK(f.floor(alpha.scaled(4)) == 2);
  CHECK(f.floor(-alpha) == -1);
  CHECK(f.floor(QuadraticScalar::integer(3)) == 3);
  CHECK(f.frac(alpha.scaled(4)) == QuadraticScalar::make(-2, 4, 1));
  CHECK_THROWS_AS(QuadraticField(0, -4, 0, 5), PreconditionError);
  CHECK_THROWS_AS(QuadraticField(0, 1, -5, 5), PreconditionError);
  QuadraticField root2(0, -2, 1, 2);
  CHECK(root2.sign(QuadraticScalar::make(-141, 100, 1)) == 1);
  CHECK(root2.sign(QuadraticScalar::make(-142, 100, 1)) == -1);
}

TEST_CASE("binomial matrices are unipotent and powers add") {
  for (std::size_t d = 1; d <= 6; ++d) {
    IntMatrix n = binomial_matrix(d);
    for (std::size_t i = 0; i < d; ++i) n[i][i] -= 1;
    IntMatrix p = n;
    for (std::size_t k = 1; k < d; ++k) p = multiply(p, n);
    for (const auto& row : p)
      for (auto v : row) CHECK(v == 0);
    for (std::size_t i = 0; i <= 4; ++i)
      for (std::size_t j = 0; j <= 4; ++j)
        CHECK(multiply(power_matrix(i, d), power_matrix(j, d)) == power_matrix(i + j, d));
  }
  CHECK(power_matrix(3, 3) == IntMatrix{{1, 3, 9}, {0, 1, 6}, {0, 0, 1}});
}

TEST_CASE("nilsystem step in low dimensions") {
  AffineNilsystem t2(2);
  CHECK(t2.matrix() == IntMatrix{{1, 1}, {0, 1}});
  CHECK(t2.alpha_multiples() == std::vector<std::int64_t>{1, 2});
  const auto a = QuadraticScalar::alpha_times(1);
  Point x{QuadraticScalar::integer(0), QuadraticScalar::integer(0)};
  x = t2.step(x);
  CHECK(x == Point{a, QuadraticScalar::make(-1, 2, 1)});  // (alpha, 2 alpha - 1)
  AffineNilsystem t3(3);
  CHECK(t3.matrix() == IntMatrix{{1, 1, 1}, {0, 1, 2}, {0, 0, 1}});
  CHECK(t3.alpha_multiples() == std::vector<std::int64_t>{1, 3, 3});
  Point z{QuadraticScalar::integer(0), QuadraticScalar::integer(0), QuadraticScalar::integer(0)};
  z = t3.step(z);
  const auto& f = t3.field();
  CHECK(z == Point{a, f.frac(a.scaled(3)), f.frac(a.scaled(3))});
}

TEST_CASE("closed form matches the direct sum") {
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::size_t n = 1; n <= 20; ++n) CHECK(vandermonde_complexity(d, n) == vandermonde_sum(d, n));
  CHECK(vandermonde_complexity(1, 9) == 10);
  CHECK(vandermonde_complexity(2, 4) == 35);
  CHECK(vandermonde_complexity(2, 8) == 165);
}

TEST_CASE("arrangement cells") {
  AffineNilsystem t1(1);
  auto a1 = TorusArrangement::build(t1);
  CHECK(a1.cells().size() == 2);
  AffineNilsystem t2(2);
  auto a2 = TorusArrangement::build(t2);
  CHECK(a2.cells().size() == 4);
  for (std::size_t i = 0; i < a2.cells().size(); ++i) {
    CHECK(a2.cells()[i].label == i);
    CHECK(a2.cell_of(a2.cells()[i].sample) == i);
  }
  CHECK(a2.family_through({QuadraticScalar::integer(0), QuadraticScalar::make(1, 0, 2)}) == 0);
  CHECK_THROWS_AS(TorusArrangement::build(AffineNilsystem(3)), PreconditionError);
}

TEST_CASE("orbit codings") {
  AffineNilsystem t1(1);
  auto a1 = TorusArrangement::build(t1);
  auto c1 = code_orbit(t1, a1, default_start(1), 20000);
  for (const auto& row : empirical_complexity(c1, 1, 30)) CHECK(row.empirical == row.n + 1);

  AffineNilsystem t2(2);
  auto a2 = TorusArrangement::build(t2);
  auto c2 = code_orbit(t2, a2, default_start(2), 200000);
  auto rows = empirical_complexity(c2, 2, 8, Execution::serial);
  for (const auto& row : rows) {
    CHECK(cpp_int(row.empirical) <= row.formula);
    if (row.n <= 4) CHECK(cpp_int(row.empirical) == row.formula);
  }
  CHECK(rows == empirical_complexity(c2, 2, 8, Execution::parallel));

  // The origin lies on the first family.
  Point origin{QuadraticScalar::integer(0), QuadraticScalar::integer(0)};
  CHECK_THROWS_AS(code_orbit(t2, a2, origin, 5), PreconditionError);
}
