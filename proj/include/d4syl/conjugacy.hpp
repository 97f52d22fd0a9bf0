#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "d4syl/group.hpp"

namespace d4syl {

/// The nine shapes of conjugacy class representatives, in census order.
enum class ClassFamily : std::uint8_t { Identity, X6, X5, X4, T3T5, T2T4T5, T1T6, T1T3, T1T2 };

inline constexpr std::array<ClassFamily, 9> kClassFamilies = {
    ClassFamily::Identity, ClassFamily::X6,     ClassFamily::X5,   ClassFamily::X4,  ClassFamily::T3T5,
    ClassFamily::T2T4T5,   ClassFamily::T1T6, ClassFamily::T1T3, ClassFamily::T1T2};

std::string_view family_name(ClassFamily f);
ClassFamily parse_family(std::string_view name);

/// Number of classes in a family and the common class size, at this q.
std::uint64_t family_class_count(ClassFamily f, std::uint64_t q);
std::uint64_t family_class_size(ClassFamily f, std::uint64_t q);

struct ConjClass {
  ClassFamily family;
  GroupElement rep;
  std::uint64_t size;
  std::uint32_t index;

  bool operator==(const ConjClass&) const = default;
};

/// Every conjugacy class: families in census order, parameters in increasing
/// code order within each family.
std::vector<ConjClass> list_classes(const FieldTower& ctx);

/// The class containing x, with its canonical representative.
ConjClass class_of(const FieldTower& ctx, const GroupElement& x);

/// The canonical class whose representative is exactly `rep`; throws
/// UnknownClass otherwise.
ConjClass class_from_rep(const FieldTower& ctx, const GroupElement& rep);

std::uint64_t centralizer_order(const FieldTower& ctx, const ConjClass& c);

/// Orbits of U acting on itself by conjugation, found by breadth-first
/// closure under the generators x_i(b), b an F_p-basis element.
struct OrbitPartition {
  /// Orbit number of each element, indexed by rank_of.
  std::vector<std::uint32_t> orbit_of;
  /// Smallest rank in each orbit, increasing.
  std::vector<std::uint64_t> label;
  std::vector<std::uint64_t> size;
};

/// Throws TooLarge when q^12 exceeds `cap`.
OrbitPartition brute_force_classes(const FieldTower& ctx, std::uint64_t cap = kDefaultEnumerationCap);

/// Generating set {x_i(b)} used by the orbit and closure computations.
std::vector<GroupElement> root_generators(const FieldTower& ctx);

/// Conjugates y by some x_index(r) so that coordinate `coord` of the result
/// vanishes. The coordinate must depend affinely on r.
GroupElement kill_coordinate(const FieldTower& ctx, const GroupElement& y, int index, int coord);

}  // namespace d4syl
