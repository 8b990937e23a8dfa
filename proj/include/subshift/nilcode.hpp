#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "subshift/core.hpp"
#include "subshift/kernels.hpp"

namespace subshift {

// (a + b alpha) / c with c > 0, kept in lowest terms.  Arithmetic that needs
// alpha's minimal polynomial goes through QuadraticField.
struct QuadraticScalar {
  std::int64_t a = 0, b = 0, c = 1;

  static QuadraticScalar integer(std::int64_t n) { return {n, 0, 1}; }
  static QuadraticScalar alpha_times(std::int64_t n) { return {0, n, 1}; }
  static QuadraticScalar make(std::int64_t a, std::int64_t b, std::int64_t c);

  QuadraticScalar operator+(const QuadraticScalar& o) const;
  QuadraticScalar operator-(const QuadraticScalar& o) const;
  QuadraticScalar operator-() const { return {-a, -b, c}; }
  QuadraticScalar scaled(std::int64_t k) const;
  QuadraticScalar divided(std::int64_t k) const;
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  bool operator==(const QuadraticScalar&) const = default;
};

// alpha is a root of x^2 + p x + q, chosen inside (lo, hi).
class QuadraticField {
 public:
  QuadraticField(std::int64_t p, std::int64_t q, long double lo, long double hi);
  static const QuadraticField& golden();  // (sqrt 5 - 1) / 2

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  long double approx_alpha() const { return alpha_; }
  long double approx(const QuadraticScalar& x) const;

  int sign(const QuadraticScalar& x) const;
  int compare(const QuadraticScalar& x, const QuadraticScalar& y) const { return sign(x - y); }
  std::int64_t floor(const QuadraticScalar& x) const;
  QuadraticScalar frac(const QuadraticScalar& x) const;
  QuadraticScalar multiply(const QuadraticScalar& x, const QuadraticScalar& y) const;
  QuadraticScalar divide(const QuadraticScalar& x, const QuadraticScalar& y) const;

 private:
  std::int64_t p_, q_, disc_;
  int root_sign_;  // alpha = (-p + root_sign * sqrt(disc)) / 2
  long double alpha_;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Point = std::vector<QuadraticScalar>;

// x -> A x + v on the d-torus, with A_{ij} = C(j, i) and v_i = C(d, i) alpha.
class AffineNilsystem {
 public:
  AffineNilsystem(std::size_t d, const QuadraticField& field = QuadraticField::golden());

  std::size_t dimension() const { return d_; }
  const QuadraticField& field() const { return field_; }
  const IntMatrix& matrix() const { return matrix_; }
  const std::vector<std::int64_t>& alpha_multiples() const { return alpha_multiples_; }

  // Coordinates must lie in [0, 1); the image is reduced mod 1 exactly.
  Point step(const Point& x) const;

 private:
  std::size_t d_;
  QuadraticField field_;
  IntMatrix matrix_;
  std::vector<std::int64_t> alpha_multiples_;
};

IntMatrix binomial_matrix(std::size_t d);
IntMatrix power_matrix(std::size_t i, std::size_t d);
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);

struct ArrangementCell {
  std::size_t label = 0;
  Point lowest_vertex;    // lexicographically least (last coordinate first)
  Point sample;           // interior point
  std::vector<std::vector<std::int64_t>> pieces;  // floors of f_1..f_d on each piece
};

// Cells of the torus cut by the families f_i(x) = sum_k i^k x_k + i^d alpha
// in Z for i = 0..d (d <= 2).
class TorusArrangement {
 public:
  static TorusArrangement build(const AffineNilsystem& sys);

  std::size_t dimension() const { return sys_.dimension(); }
  const std::vector<ArrangementCell>& cells() const { return cells_; }
  // Label of the cell containing x; throws when x lies on a family.
  Letter cell_of(const Point& x) const;
  // Index of a family through x, or -1.
  int family_through(const Point& x) const;

 private:
  explicit TorusArrangement(AffineNilsystem sys) : sys_(std::move(sys)) {}

  AffineNilsystem sys_;
  std::vector<ArrangementCell> cells_;
  std::map<std::vector<std::int64_t>, std::size_t> piece_cell_;
};

// f_i(x) for the arrangement families.
QuadraticScalar family_value(const AffineNilsystem& sys, std::size_t i, const Point& x);

struct OrbitCoding {
  Point start;
  std::size_t length = 0;
  Word names;
};

OrbitCoding code_orbit(const AffineNilsystem& sys, const TorusArrangement& arr, Point start,
                       std::size_t length);

// Default generic start: x_k = alpha / (k + 2).
Point default_start(std::size_t d);

// The closed form (1/V(0..d-1)) sum over 0 <= k_1 < ... < k_d <= n+d-1 of
// V(k_1..k_d), evaluated through its product form.
boost::multiprecision::cpp_int vandermonde_complexity(std::size_t d, std::size_t n);

struct ComplexityRow {
  std::size_t n = 0;
  std::uint64_t empirical = 0;
  boost::multiprecision::cpp_int formula;
  bool operator==(const ComplexityRow&) const = default;
};

std::vector<ComplexityRow> empirical_complexity(const OrbitCoding& coding, std::size_t d,
                                                std::size_t max_n,
                                                Execution ex = Execution::parallel);

}  // namespace subshift
