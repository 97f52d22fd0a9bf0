#pragma once

#include <cstdint>
#include <vector>

#include "d4syl/field_tower.hpp"

namespace d4syl::testing {

inline FieldTower tower(std::uint32_t q) {
  const auto pk = split_prime_power(q);
  return build_tower(pk->first, pk->second);
}

inline std::vector<Fq3> all_fq3(const FieldTower& ctx) {
  std::vector<Fq3> out;
  for (std::uint32_t c = 0; c < ctx.order3(); ++c) out.push_back(Fq3{c});
  return out;
}

inline std::vector<Fq> all_fq(const FieldTower& ctx) {
  std::vector<Fq> out;
  for (std::uint32_t c = 0; c < ctx.q(); ++c) out.push_back(Fq{c});
  return out;
}

// Power by repeated polynomial multiplication, independent of the tables.
inline Fq3 slow_pow(const FieldTower& ctx, Fq3 a, std::uint64_t e) {
  Fq3 r{1};
  for (std::uint64_t i = 0; i < e; ++i) r = ctx.mul_poly(r, a);
  return r;
}

}  // namespace d4syl::testing
