#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "d4syl/field_tower.hpp"

namespace d4syl {

/// Exact element of Z[zeta_p], stored on the spanning set zeta^0 .. zeta^{p-1}
/// with the last coordinate normalized to zero. Arithmetic is 64-bit and
/// throws IntegerOverflow instead of wrapping.
class CycInt {
 public:
  CycInt() = default;
  /// The integer n.
  CycInt(std::uint32_t p, std::int64_t n);
  /// zeta_p^e.
  static CycInt root(std::uint32_t p, std::int64_t e);
  /// From p-1 canonical coefficients c0..c_{p-2}.
  static CycInt from_coeffs(std::uint32_t p, std::span<const std::int64_t> coeffs);

  std::uint32_t prime() const { return static_cast<std::uint32_t>(c_.size()); }
  /// Canonical coefficients c0..c_{p-2}.
  std::span<const std::int64_t> coeffs() const { return {c_.data(), c_.empty() ? 0 : c_.size() - 1}; }
  std::int64_t coeff(std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  /// True when the value is an ordinary integer; stores it in `out`.
  bool is_integer(std::int64_t& out) const;

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator-() const;
  CycInt operator*(const CycInt& o) const;
  CycInt& operator+=(const CycInt& o);
  bool operator==(const CycInt& o) const = default;

  /// Complex conjugation, zeta -> zeta^{-1}.
  CycInt conj() const;
  CycInt scaled(std::int64_t n) const;

  /// "[c0,c1,...]".
  std::string to_string() const;

 private:
  explicit CycInt(std::vector<std::int64_t> c) : c_(std::move(c)) { normalize(); }
  void normalize();
  void check_same(const CycInt& o) const;

  std::vector<std::int64_t> c_;
};

CycInt add(const CycInt& a, const CycInt& b);
CycInt mul(const CycInt& a, const CycInt& b);
CycInt neg(const CycInt& a);
CycInt conj(const CycInt& a);
CycInt int_scale(std::int64_t n, const CycInt& a);
bool is_zero(const CycInt& a);

/// Accumulates sums of roots of unity by exponent, so long character sums
/// cost one increment per term.
class RootSum {
 public:
  explicit RootSum(std::uint32_t p) : count_(p, 0) {}
  void add(std::uint32_t exponent, std::int64_t times = 1) { count_[exponent % count_.size()] += times; }
  CycInt value() const;
  /// value() times zeta^{shift}.
  CycInt value_shifted(std::uint32_t shift) const;

 private:
  std::vector<std::int64_t> count_;
};

/// theta(b) = zeta_p^{Tr(b)} with Tr the absolute trace of F_q.
CycInt theta(const FieldTower& ctx, Fq b);
/// theta(pi_q(x)).
CycInt theta_pi(const FieldTower& ctx, Fq3 x);

/// Exponent forms of the two characters, for use with RootSum.
inline std::uint32_t theta_exp(const FieldTower& ctx, Fq b) { return ctx.trace(b); }
inline std::uint32_t theta_pi_exp(const FieldTower& ctx, Fq3 x) { return ctx.trace(ctx.pi_q(x)); }

}  // namespace d4syl
