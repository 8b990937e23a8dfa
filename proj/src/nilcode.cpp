#include "subshift/nilcode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

#include "subshift/error.hpp"

namespace subshift {

namespace {

using i128 = __int128;
using boost::multiprecision::cpp_int;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 x, i128 y) {
  x = abs128(x);
  y = abs128(y);
  while (y != 0) {
    i128 t = x % y;
    x = y;
    y = t;
  }
  return x;
}

std::int64_t narrow(i128 x) {
  if (x > INT64_MAX || x < INT64_MIN) throw CapExceeded("quadratic scalar coefficient overflow");
  return static_cast<std::int64_t>(x);
}

QuadraticScalar normalize(i128 a, i128 b, i128 c) {
  if (c == 0) throw PreconditionError("zero denominator");
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  i128 g = gcd128(gcd128(a, b), c);
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  return {narrow(a), narrow(b), narrow(c)};
}

int sign_of(i128 x) { return (x > 0) - (x < 0); }

cpp_int big(i128 x) {
  cpp_int r = static_cast<std::int64_t>(x >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(x);
  return r;
}

}  // namespace

QuadraticScalar QuadraticScalar::make(std::int64_t a, std::int64_t b, std::int64_t c) {
  return normalize(a, b, c);
}

QuadraticScalar QuadraticScalar::operator+(const QuadraticScalar& o) const {
  const i128 g = gcd128(c, o.c);
  const i128 l = static_cast<i128>(c) / g * o.c;
  return normalize(static_cast<i128>(a) * (l / c) + static_cast<i128>(o.a) * (l / o.c),
                   static_cast<i128>(b) * (l / c) + static_cast<i128>(o.b) * (l / o.c), l);
}

QuadraticScalar QuadraticScalar::operator-(const QuadraticScalar& o) const { return *this + (-o); }

QuadraticScalar QuadraticScalar::scaled(std::int64_t k) const {
  return normalize(static_cast<i128>(a) * k, static_cast<i128>(b) * k, c);
}

QuadraticScalar QuadraticScalar::divided(std::int64_t k) const {
  return normalize(a, b, static_cast<i128>(c) * k);
}

QuadraticField::QuadraticField(std::int64_t p, std::int64_t q, long double lo, long double hi)
    : p_(p), q_(q), disc_(p * p - 4 * q) {
  if (disc_ <= 0) throw PreconditionError("minimal polynomial has no real roots");
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<long double>(disc_))));
  for (std::int64_t r = std::max<std::int64_t>(0, root - 1); r <= root + 1; ++r)
    if (r * r == disc_) throw PreconditionError("minimal polynomial is reducible");
  const long double s = std::sqrt(static_cast<long double>(disc_));
  const long double plus = (-static_cast<long double>(p) + s) / 2;
  const long double minus = (-static_cast<long double>(p) - s) / 2;
  const bool in_plus = lo < plus && plus < hi;
  const bool in_minus = lo < minus && minus < hi;
  if (in_plus == in_minus) throw PreconditionError("isolating interval must contain exactly one root");
  root_sign_ = in_plus ? 1 : -1;
  alpha_ = in_plus ? plus : minus;
}

const QuadraticField& QuadraticField::golden() {
  static const QuadraticField field(1, -1, 0.0L, 1.0L);
  return field;
}

long double QuadraticField::approx(const QuadraticScalar& x) const {
  return (static_cast<long double>(x.a) + static_cast<long double>(x.b) * alpha_) /
         static_cast<long double>(x.c);
}

int QuadraticField::sign(const QuadraticScalar& x) const {
  // 2(a + b alpha) = (2a - b p) + b * root_sign * sqrt(disc)
  const i128 u = 2 * static_cast<i128>(x.a) - static_cast<i128>(x.b) * p_;
  const i128 v = static_cast<i128>(x.b) * root_sign_;
  if (v == 0) return sign_of(u);
  if (u == 0 || (u > 0) == (v > 0)) return u == 0 ? sign_of(v) : sign_of(u);
  constexpr i128 kSafe = static_cast<i128>(1) << 60;
  int cmp;  // sign of u^2 - v^2 disc
  if (abs128(u) < kSafe && abs128(v) < kSafe && disc_ < (1 << 6)) {
    const i128 lhs = u * u, rhs = v * v * disc_;
    cmp = sign_of(lhs - rhs);
  } else {
    const cpp_int bu = big(u), bv = big(v);
    const cpp_int diff = bu * bu - bv * bv * disc_;
    cmp = diff > 0 ? 1 : diff < 0 ? -1 : 0;
  }
  return u > 0 ? cmp : -cmp;
}

std::int64_t QuadraticField::floor(const QuadraticScalar& x) const {
  auto f = static_cast<std::int64_t>(std::floor(approx(x)));
  while (sign(x - QuadraticScalar::integer(f)) < 0) --f;
  while (sign(x - QuadraticScalar::integer(f + 1)) >= 0) ++f;
  return f;
}

QuadraticScalar QuadraticField::frac(const QuadraticScalar& x) const {
  return x - QuadraticScalar::integer(floor(x));
}

QuadraticScalar QuadraticField::multiply(const QuadraticScalar& x, const QuadraticScalar& y) const {
  const i128 bb = static_cast<i128>(x.b) * y.b;
  return normalize(static_cast<i128>(x.a) * y.a - bb * q_,
                   static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a - bb * p_,
                   static_cast<i128>(x.c) * y.c);
}

QuadraticScalar QuadraticField::divide(const QuadraticScalar& x, const QuadraticScalar& y) const {
  if (y.is_zero()) throw PreconditionError("division by zero");
  // Multiply by the conjugate (a - p b) - b alpha; the norm is rational.
  const i128 norm = static_cast<i128>(y.a) * y.a - static_cast<i128>(p_) * y.a * y.b +
                    static_cast<i128>(q_) * y.b * y.b;
  const QuadraticScalar conj = normalize(static_cast<i128>(y.a) - static_cast<i128>(p_) * y.b,
                                         -static_cast<i128>(y.b), 1);
  const QuadraticScalar top = multiply(x, conj);
  return normalize(static_cast<i128>(top.a) * y.c, static_cast<i128>(top.b) * y.c,
                   static_cast<i128>(top.c) * norm);
}

IntMatrix binomial_matrix(std::size_t d) {
  IntMatrix m(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    std::int64_t c = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      m[i][j] = c;
      c = c * static_cast<std::int64_t>(j - i) / static_cast<std::int64_t>(i + 1);
    }
  }
  return m;
}

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t n = x.size();
  IntMatrix out(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t t;
        if (__builtin_mul_overflow(x[i][k], y[k][j], &t) ||
            __builtin_add_overflow(out[i][j], t, &out[i][j]))
          throw CapExceeded("matrix entry overflow");
      }
  return out;
}

IntMatrix power_matrix(std::size_t i, std::size_t d) {
  IntMatrix out(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t k = 0; k < d; ++k) out[k][k] = 1;
  const IntMatrix a = binomial_matrix(d);
  for (std::size_t k = 0; k < i; ++k) out = multiply(out, a);
  return out;
}

AffineNilsystem::AffineNilsystem(std::size_t d, const QuadraticField& field)
    : d_(d), field_(field), matrix_(binomial_matrix(d)) {
  if (d == 0) throw PreconditionError("dimension must be at least 1");
  const IntMatrix wide = binomial_matrix(d + 1);
  for (std::size_t i = 0; i < d; ++i) alpha_multiples_.push_back(wide[i][d]);
}

Point AffineNilsystem::step(const Point& x) const {
  if (x.size() != d_) throw PreconditionError("point has the wrong dimension");
  Point y;
  y.reserve(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    QuadraticScalar v = QuadraticScalar::alpha_times(alpha_multiples_[i]);
    for (std::size_t j = i; j < d_; ++j) v = v + x[j].scaled(matrix_[i][j]);
    y.push_back(field_.frac(v));
  }
  return y;
}

QuadraticScalar family_value(const AffineNilsystem& sys, std::size_t i, const Point& x) {
  const std::size_t d = sys.dimension();
  std::int64_t w = 1;
  QuadraticScalar v;
  for (std::size_t k = 0; k < d; ++k) {
    v = v + x[k].scaled(w);
    w *= static_cast<std::int64_t>(i);
  }
  return v + QuadraticScalar::alpha_times(w);
}

namespace {

struct HalfPlane {
  std::vector<std::int64_t> coeff;  // linear part
  QuadraticScalar offset;           // keep coeff . x + offset >= 0
};

QuadraticScalar eval(const HalfPlane& h, const Point& x) {
  QuadraticScalar v = h.offset;
  for (std::size_t k = 0; k < x.size(); ++k) v = v + x[k].scaled(h.coeff[k]);
  return v;
}

// Polygons are closed; in dimension 1 the "polygon" is a segment.
std::vector<Point> clip(const QuadraticField& f, const std::vector<Point>& poly, const HalfPlane& h) {
  std::vector<Point> out;
  const bool segment = !poly.empty() && poly[0].size() == 1;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    if (segment && i + 1 == poly.size()) {
      if (f.sign(eval(h, p)) >= 0) out.push_back(p);
      break;
    }
    const Point& q = poly[(i + 1) % poly.size()];
    const QuadraticScalar gp = eval(h, p), gq = eval(h, q);
    const int sp = f.sign(gp), sq = f.sign(gq);
    if (sp >= 0) out.push_back(p);
    if (sp * sq < 0) {
      const QuadraticScalar t = f.divide(gp, gp - gq);
      Point m;
      for (std::size_t k = 0; k < p.size(); ++k) m.push_back(p[k] + f.multiply(t, q[k] - p[k]));
      out.push_back(std::move(m));
    }
  }
  return out;
}

int area_sign(const QuadraticField& f, const std::vector<Point>& poly) {
  QuadraticScalar twice;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    twice = twice + f.multiply(p[0], q[1]) - f.multiply(q[0], p[1]);
  }
  return f.sign(twice);
}

// Last coordinate first, then the earlier ones.
bool lower(const QuadraticField& f, const Point& x, const Point& y) {
  for (std::size_t k = x.size(); k-- > 0;) {
    int s = f.compare(x[k], y[k]);
    if (s != 0) return s < 0;
  }
  return false;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
};

}  // namespace

TorusArrangement TorusArrangement::build(const AffineNilsystem& sys) {
  const std::size_t d = sys.dimension();
  if (d > 2) throw PreconditionError("arrangements are only built for dimension 1 or 2");
  const QuadraticField& f = sys.field();
  TorusArrangement arr(sys);

  struct Piece {
    std::vector<std::int64_t> key;
    std::vector<Point> poly;
  };
  std::vector<Piece> pieces;

  // Fundamental domain [0,1]^d as a polygon (or a segment).
  std::vector<Point> square;
  if (d == 1) {
    square = {{QuadraticScalar::integer(0)}, {QuadraticScalar::integer(1)}};
  } else {
    square = {{QuadraticScalar::integer(0), QuadraticScalar::integer(0)},
              {QuadraticScalar::integer(1), QuadraticScalar::integer(0)},
              {QuadraticScalar::integer(1), QuadraticScalar::integer(1)},
              {QuadraticScalar::integer(0), QuadraticScalar::integer(1)}};
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  for (std::size_t i = 1; i <= d; ++i) {
    std::int64_t lo = INT64_MAX, hi = INT64_MIN;
    for (const auto& corner : square) {
      const std::int64_t v = f.floor(family_value(sys, i, corner));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ranges.push_back({lo, hi});
  }
  auto family_plane = [&](std::size_t i, std::int64_t n, bool above) {
    HalfPlane h;
    std::int64_t w = 1;
    for (std::size_t k = 0; k < d; ++k) {
      h.coeff.push_back(above ? w : -w);
      w *= static_cast<std::int64_t>(i);
    }
    const QuadraticScalar rest = QuadraticScalar::alpha_times(w) - QuadraticScalar::integer(n);
    h.offset = above ? rest : -rest;
    return h;
  };

  std::vector<std::int64_t> key(d);
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i == d) {
      std::vector<Point> poly = square;
      for (std::size_t j = 0; j < d && !poly.empty(); ++j) {
        poly = clip(f, poly, family_plane(j + 1, key[j], true));
        if (!poly.empty()) poly = clip(f, poly, family_plane(j + 1, key[j] + 1, false));
      }
      bool solid;
      if (d == 1) solid = poly.size() == 2 && f.compare(poly[0][0], poly[1][0]) != 0;
      else solid = poly.size() >= 3 && area_sign(f, poly) != 0;
      if (solid) pieces.push_back({key, std::move(poly)});
      return;
    }
    for (std::int64_t n = ranges[i].first; n <= ranges[i].second; ++n) {
      key[i] = n;
      enumerate(i + 1);
    }
  };
  enumerate(0);

  // Glue across the face where the last coordinate wraps from 1 to 0; the
  // first coordinate's face is itself a family.
  UnionFind uf(pieces.size());
  if (d == 2) {
    auto find_piece = [&](const std::vector<std::int64_t>& k) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (pieces[i].key == k) return i;
      return std::nullopt;
    };
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::size_t on_top = 0;
      for (const auto& v : pieces[i].poly)
        if (f.compare(v[1], QuadraticScalar::integer(1)) == 0) ++on_top;
      if (on_top < 2) continue;
      std::vector<std::int64_t> below = pieces[i].key;
      for (std::size_t j = 0; j < d; ++j) below[j] -= static_cast<std::int64_t>(j + 1);
      auto other = find_piece(below);
      if (!other) throw PreconditionError("arrangement gluing failed");
      uf.unite(i, *other);
    }
  }

  std::map<std::size_t, ArrangementCell> by_root;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    ArrangementCell& cell = by_root[uf.find(i)];
    cell.pieces.push_back(pieces[i].key);
    for (const auto& v : pieces[i].poly)
      if (cell.lowest_vertex.empty() || lower(f, v, cell.lowest_vertex)) cell.lowest_vertex = v;
    if (cell.sample.empty()) {
      Point c(d);
      for (const auto& v : pieces[i].poly)
        for (std::size_t k = 0; k < d; ++k) c[k] = c[k] + v[k];
      for (auto& x : c) x = x.divided(static_cast<std::int64_t>(pieces[i].poly.size()));
      cell.sample = std::move(c);
    }
  }
  for (auto& [root, cell] : by_root) arr.cells_.push_back(std::move(cell));
  std::sort(arr.cells_.begin(), arr.cells_.end(), [&](const auto& x, const auto& y) {
    if (lower(f, x.lowest_vertex, y.lowest_vertex)) return true;
    if (lower(f, y.lowest_vertex, x.lowest_vertex)) return false;
    return lower(f, x.sample, y.sample);
  });
  for (std::size_t i = 0; i < arr.cells_.size(); ++i) {
    arr.cells_[i].label = i;
    for (const auto& k : arr.cells_[i].pieces) arr.piece_cell_[k] = i;
  }
  if (arr.cells_.size() > 255) throw CapExceeded("too many cells");
  return arr;
}

int TorusArrangement::family_through(const Point& x) const {
  const QuadraticField& f = sys_.field();
  if (x[0].is_zero()) return 0;
  for (std::size_t i = 1; i <= sys_.dimension(); ++i)
    if (f.frac(family_value(sys_, i, x)).is_zero()) return static_cast<int>(i);
  return -1;
}

Letter TorusArrangement::cell_of(const Point& x) const {
  if (int fam = family_through(x); fam >= 0)
    throw PreconditionError("point lies on family " + std::to_string(fam));
  std::vector<std::int64_t> key;
  for (std::size_t i = 1; i <= sys_.dimension(); ++i)
    key.push_back(sys_.field().floor(family_value(sys_, i, x)));
  auto it = piece_cell_.find(key);
  if (it == piece_cell_.end()) throw PreconditionError("point outside every cell");
  return static_cast<Letter>(it->second);
}

Point default_start(std::size_t d) {
  Point p;
  for (std::size_t k = 0; k < d; ++k) p.push_back(QuadraticScalar::make(0, 1, static_cast<std::int64_t>(k + 2)));
  return p;
}

OrbitCoding code_orbit(const AffineNilsystem& sys, const TorusArrangement& arr, Point start,
                       std::size_t length) {
  const QuadraticField& f = sys.field();
  if (start.size() != sys.dimension()) throw PreconditionError("start has the wrong dimension");
  for (const auto& c : start)
    if (f.sign(c) < 0 || f.compare(c, QuadraticScalar::integer(1)) >= 0)
      throw PreconditionError("start coordinates must lie in [0, 1)");
  OrbitCoding out;
  out.start = start;
  out.length = length;
  out.names.reserve(length);
  Point x = std::move(start);
  for (std::size_t t = 0; t < length; ++t) {
    if (int fam = arr.family_through(x); fam >= 0)
      throw PreconditionError("orbit hits family " + std::to_string(fam) + " at step " +
                              std::to_string(t));
    out.names.push_back(arr.cell_of(x));
    x = sys.step(x);
  }
  return out;
}

cpp_int vandermonde_complexity(std::size_t d, std::size_t n) {
  if (d == 0) throw PreconditionError("dimension must be at least 1");
  cpp_int num = 1, den = 1;
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = i; j <= d; ++j) {
      num *= n + i + j - 1;
      den *= i + j - 1;
    }
  return num / den;
}

std::vector<ComplexityRow> empirical_complexity(const OrbitCoding& coding, std::size_t d,
                                                std::size_t max_n, Execution ex) {
  Letter top = 0;
  for (Letter a : coding.names) top = std::max(top, a);
  const unsigned bits = bits_for_alphabet(static_cast<std::size_t>(top) + 1);
  if (max_n * bits > 64) throw CapExceeded("window length too large for packed counting");
  auto counts = packed_window_profile(coding.names, max_n, bits, ex);
  std::vector<ComplexityRow> rows;
  for (std::size_t n = 1; n <= max_n; ++n) rows.push_back({n, counts[n], vandermonde_complexity(d, n)});
  return rows;
}

}  // namespace subshift
