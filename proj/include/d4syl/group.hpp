#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

#include "d4syl/field_tower.hpp"

namespace d4syl {

/// x(t1,...,t6) = x2(t2) x1(t1) x3(t3) x4(t4) x5(t5) x6(t6), the normal form
/// of an element of U. t1, t3, t4 live in F_{q^3}; t2, t5, t6 in F_q.
struct GroupElement {
  Fq3 t1;
  Fq t2;
  Fq3 t3;
  Fq3 t4;
  Fq t5;
  Fq t6;

  auto operator<=>(const GroupElement&) const = default;
  bool is_identity() const { return *this == GroupElement{}; }
};

/// A single root element x_index(value). Indices 2, 5, 6 require value in F_q.
struct RootFactor {
  int index;
  Fq3 value;
};

/// x_i(t) as a GroupElement. Throws std::invalid_argument if t lies in the
/// wrong field for i.
GroupElement root_element(const FieldTower& ctx, RootFactor f);
GroupElement root_element(const FieldTower& ctx, int index, Fq3 value);

/// Coordinate t_i (i = 1..6) as an element of F_{q^3}.
Fq3 coordinate(const GroupElement& x, int i);
void set_coordinate(const FieldTower& ctx, GroupElement& x, int i, Fq3 value);

GroupElement multiply(const FieldTower& ctx, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const FieldTower& ctx, const GroupElement& a);
/// a^{-1} b^{-1} a b.
GroupElement commutator(const FieldTower& ctx, const GroupElement& a, const GroupElement& b);
/// u x u^{-1} by multiplication.
GroupElement conjugate(const FieldTower& ctx, const GroupElement& u, const GroupElement& x);
/// u x u^{-1} with u^{-1} already known.
GroupElement conjugate(const FieldTower& ctx, const GroupElement& u, const GroupElement& u_inv,
                       const GroupElement& x);
/// u x u^{-1} from the closed conjugation formulas.
GroupElement conjugate_closed(const FieldTower& ctx, const GroupElement& u, const GroupElement& x);

/// The factors [x_j(r), x_i(t)] in normal order, for x_j placed after x_i.
std::vector<RootFactor> root_commutator(const FieldTower& ctx, RootFactor xj, RootFactor xi);

/// q^12, or TooLarge when it does not fit in 64 bits.
std::uint64_t group_order(const FieldTower& ctx);

/// Index of x in coordinate-lexicographic order (t1 most significant).
std::uint64_t rank_of(const FieldTower& ctx, const GroupElement& x);
GroupElement element_at(const FieldTower& ctx, std::uint64_t rank);

/// Default enumeration cap: 3^12.
inline constexpr std::uint64_t kDefaultEnumerationCap = 531441;

/// All elements of U in coordinate-lexicographic order.
class ElementRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GroupElement;
    using difference_type = std::ptrdiff_t;
    using pointer = const GroupElement*;
    using reference = const GroupElement&;

    iterator() = default;
    iterator(const FieldTower* ctx, std::uint64_t rank);
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& o) const { return rank_ == o.rank_; }

   private:
    const FieldTower* ctx_ = nullptr;
    std::uint64_t rank_ = 0;
    GroupElement current_;
  };

  ElementRange(const FieldTower& ctx, std::uint64_t size) : ctx_(&ctx), size_(size) {}
  iterator begin() const { return iterator(ctx_, 0); }
  iterator end() const { return iterator(ctx_, size_); }
  std::uint64_t size() const { return size_; }

 private:
  const FieldTower* ctx_;
  std::uint64_t size_;
};

/// Throws TooLarge when q^12 exceeds `cap`.
ElementRange enumerate_all(const FieldTower& ctx, std::uint64_t cap = kDefaultEnumerationCap);

/// "x([..];[..];[..];[..];[..];[..])", coordinates as F_p digit lists.
std::string to_string(const FieldTower& ctx, const GroupElement& x);
/// Inverse of to_string; throws ParseError.
GroupElement parse_element(const FieldTower& ctx, const std::string& text);

}  // namespace d4syl
