#include "subshift/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "subshift/error.hpp"

namespace subshift {

FiniteGroup::FiniteGroup(CayleyTable table, std::size_t identity)
    : table_(std::move(table)), identity_(identity) {
  const std::size_t q = table_.size();
  if (q == 0) throw PreconditionError("group table is empty");
  if (identity_ >= q) throw PreconditionError("identity index out of range");
  for (const auto& row : table_) {
    if (row.size() != q) throw PreconditionError("group table is not square");
    for (auto v : row)
      if (v >= q) throw PreconditionError("group table entry out of range");
  }
  for (std::size_t a = 0; a < q; ++a)
    if (table_[identity_][a] != a || table_[a][identity_] != a)
      throw PreconditionError("identity element does not act trivially");
  inverse_.assign(q, q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      if (table_[a][b] == identity_) {
        if (table_[b][a] != identity_)
          throw PreconditionError("left and right inverses differ");
        inverse_[a] = b;
      }
  for (std::size_t a = 0; a < q; ++a)
    if (inverse_[a] == q) throw PreconditionError("element without inverse");
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < q; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw PreconditionError("group table is not associative");
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  std::size_t x = a;
  while (x != identity_) {
    x = table_[x][a];
    ++k;
  }
  return k;
}

std::vector<std::size_t> FiniteGroup::element_orders() const {
  std::vector<std::size_t> orders;
  for (std::size_t a = 0; a < order(); ++a) orders.push_back(element_order(a));
  std::sort(orders.begin(), orders.end());
  return orders;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::vector<std::size_t> FiniteGroup::enumeration() const {
  std::vector<std::size_t> e{identity_};
  for (std::size_t a = 0; a < order(); ++a)
    if (a != identity_) e.push_back(a);
  return e;
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                     const std::vector<std::size_t>& f) {
  if (f.size() != g.order()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (f[g.product(a, b)] != h.product(f[a], f[b])) return false;
  return true;
}

namespace {

std::vector<std::size_t> generators(const FiniteGroup& g) {
  std::vector<bool> in(g.order(), false);
  in[g.identity()] = true;
  std::vector<std::size_t> gens;
  std::vector<std::size_t> members{g.identity()};
  while (members.size() < g.order()) {
    std::size_t best = g.order();
    for (std::size_t a = 0; a < g.order(); ++a)
      if (!in[a] && (best == g.order() || g.element_order(a) > g.element_order(best)))
        best = a;
    gens.push_back(best);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t s : gens) {
        std::size_t x = g.product(members[i], s);
        if (!in[x]) {
          in[x] = true;
          members.push_back(x);
        }
      }
  }
  return gens;
}

std::optional<std::vector<std::size_t>> extend(const FiniteGroup& g,
                                               const FiniteGroup& h,
                                               const std::vector<std::size_t>& gens,
                                               const std::vector<std::size_t>& images) {
  const std::size_t none = h.order();
  std::vector<std::size_t> f(g.order(), none);
  f[g.identity()] = h.identity();
  std::vector<std::size_t> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    std::size_t x = queue[i];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      std::size_t y = g.product(x, gens[k]);
      std::size_t fy = h.product(f[x], images[k]);
      if (f[y] == none) {
        f[y] = fy;
        queue.push_back(y);
      } else if (f[y] != fy) {
        return std::nullopt;
      }
    }
  }
  std::vector<bool> hit(h.order(), false);
  for (auto v : f) {
    if (v == none || hit[v]) return std::nullopt;
    hit[v] = true;
  }
  if (!is_homomorphism(g, h, f)) return std::nullopt;
  return f;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& g,
                                                         const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.order() > kMaxGroupOrder)
    throw PreconditionError("isomorphism search is limited to order 24");
  if (g.is_abelian() != h.is_abelian() || g.element_orders() != h.element_orders())
    return std::nullopt;
  const auto gens = generators(g);
  std::vector<std::size_t> images(gens.size());
  std::optional<std::vector<std::size_t>> found;
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (found) return;
    if (k == gens.size()) {
      found = extend(g, h, gens, images);
      return;
    }
    for (std::size_t b = 0; b < h.order() && !found; ++b) {
      if (h.element_order(b) != g.element_order(gens[k])) continue;
      images[k] = b;
      assign(k + 1);
    }
  };
  assign(0);
  return found;
}

FiniteGroup cyclic_group(std::size_t n) {
  CayleyTable t(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<std::uint32_t>((a + b) % n);
  return FiniteGroup(std::move(t), 0);
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  CayleyTable t(n, std::vector<std::uint32_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t x = g.product(a / h.order(), b / h.order());
      std::size_t y = h.product(a % h.order(), b % h.order());
      t[a][b] = static_cast<std::uint32_t>(x * h.order() + y);
    }
  return FiniteGroup(std::move(t), g.identity() * h.order() + h.identity());
}

FiniteGroup dihedral_group(std::size_t n) {
  // r^k s^e has index k + n*e.
  CayleyTable t(2 * n, std::vector<std::uint32_t>(2 * n));
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = 0; b < 2 * n; ++b) {
      std::size_t ka = a % n, ea = a / n, kb = b % n, eb = b / n;
      std::size_t k = ea ? (ka + n - kb) % n : (ka + kb) % n;
      t[a][b] = static_cast<std::uint32_t>(k + n * ((ea + eb) % 2));
    }
  return FiniteGroup(std::move(t), 0);
}

FiniteGroup quaternion_group() {
  // 1, i, j, k, then their negatives.
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  CayleyTable t(8, std::vector<std::uint32_t>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      int sign = kSign[a % 4][b % 4] * (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1);
      t[a][b] = static_cast<std::uint32_t>(kUnit[a % 4][b % 4] + (sign < 0 ? 4 : 0));
    }
  return FiniteGroup(std::move(t), 0);
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::uint32_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<std::uint32_t>(i);
  CayleyTable t(perms.size(), std::vector<std::uint32_t>(perms.size()));
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = index.at(c);
    }
  return FiniteGroup(std::move(t), 0);
}

const std::vector<NamedGroup>& group_catalog() {
  static const std::vector<NamedGroup> catalog = [] {
    std::vector<NamedGroup> c;
    c.push_back({"1", cyclic_group(1)});
    c.push_back({"Z2", cyclic_group(2)});
    c.push_back({"Z3", cyclic_group(3)});
    c.push_back({"Z4", cyclic_group(4)});
    c.push_back({"Z2xZ2", direct_product(cyclic_group(2), cyclic_group(2))});
    c.push_back({"Z5", cyclic_group(5)});
    c.push_back({"Z6", cyclic_group(6)});
    c.push_back({"S3", symmetric_group(3)});
    c.push_back({"Z7", cyclic_group(7)});
    c.push_back({"Z8", cyclic_group(8)});
    c.push_back({"Z4xZ2", direct_product(cyclic_group(4), cyclic_group(2))});
    c.push_back({"Z2xZ2xZ2", direct_product(direct_product(cyclic_group(2), cyclic_group(2)),
                                            cyclic_group(2))});
    c.push_back({"D4", dihedral_group(4)});
    c.push_back({"Q8", quaternion_group()});
    c.push_back({"S4", symmetric_group(4)});
    return c;
  }();
  return catalog;
}

std::string iso_label(const FiniteGroup& g) {
  if (g.order() <= kMaxGroupOrder)
    for (const auto& named : group_catalog())
      if (named.group.order() == g.order() && find_isomorphism(g, named.group))
        return named.name;
  return "order-" + std::to_string(g.order());
}

}  // namespace subshift
