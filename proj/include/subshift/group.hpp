#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subshift {

inline constexpr std::size_t kMaxGroupOrder = 24;

using CayleyTable = std::vector<std::vector<std::uint32_t>>;

class FiniteGroup {
 public:
  // Validates closure, identity, inverses and associativity (exhaustively).
  FiniteGroup(CayleyTable table, std::size_t identity);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return identity_; }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const CayleyTable& table() const { return table_; }

  std::size_t element_order(std::size_t a) const;
  // Sorted multiset of element orders.
  std::vector<std::size_t> element_orders() const;
  bool is_abelian() const;

  // The listing g_0, ..., g_{q-1} used by the realization substitution:
  // identity first, then the remaining elements in table order.
  std::vector<std::size_t> enumeration() const;

 private:
  CayleyTable table_;
  std::size_t identity_;
  std::vector<std::size_t> inverse_;
};

// Some bijection f with f(ab) = f(a)f(b), or nothing.  Orders up to
// kMaxGroupOrder are searched exhaustively over generator images.
std::optional<std::vector<std::size_t>> find_isomorphism(const FiniteGroup& g,
                                                         const FiniteGroup& h);
bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                     const std::vector<std::size_t>& f);

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup dihedral_group(std::size_t n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup symmetric_group(std::size_t n);

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

// Every group of order at most 8, one per isomorphism class, plus S4.
const std::vector<NamedGroup>& group_catalog();

// Catalog name of an isomorphic group, or "order-<q>".
std::string iso_label(const FiniteGroup& g);

}  // namespace subshift
