#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "d4syl/fp_matrix.hpp"

namespace d4syl {

/// Element of F_q. `code` packs the F_p-coordinates as base-p digits,
/// coordinate i being the coefficient of x^i in F_p[x]/(f).
struct Fq {
  std::uint32_t code = 0;
  auto operator<=>(const Fq&) const = default;
};

/// Element of F_{q^3} = F_q[y]/(g). `code` = c0 + c1*q + c2*q^2 with
/// c0, c1, c2 the F_q-coordinates in the basis {1, y, y^2}. Elements of the
/// embedded F_q are exactly the codes below q, so integer order on codes is
/// the coefficient-lexicographic order used for every deterministic choice.
struct Fq3 {
  std::uint32_t code = 0;
  auto operator<=>(const Fq3&) const = default;
};

/// Splits q into (p, k) with q = p^k. nullopt if q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> split_prime_power(std::uint64_t q);

bool is_prime(std::uint64_t n);

/// Immutable arithmetic context for F_p within F_q within F_{q^3}, plus the
/// fixed element eta with eta + eta^q + eta^{q^2} = 1 and eta outside F_q.
///
/// All arithmetic is table driven; the tables are built once in the
/// constructor and never touched again, so a const FieldTower can be shared
/// by any number of threads.
class FieldTower {
 public:
  /// Largest supported |F_{q^3}|.
  static constexpr std::uint32_t kMaxOrder3 = 1u << 21;

  /// f: k+1 coefficients over F_p, constant term first, monic.
  /// g: 4 coefficients over F_q (as Fq codes), constant term first, monic.
  /// Empty vectors select the smallest irreducible polynomial.
  FieldTower(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> f = {},
             std::vector<std::uint32_t> g = {});

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order3() const { return Q_; }
  const std::vector<std::uint32_t>& f() const { return f_; }
  const std::vector<std::uint32_t>& g() const { return g_; }
  Fq3 eta() const { return eta_; }
  /// The 3k x 3k matrix of t -> t^q acting on F_p-coordinates.
  const FpMatrix& frobenius_matrix() const { return frob_matrix_; }

  // F_q

  Fq add(Fq a, Fq b) const { return Fq{add1_[a.code * q_ + b.code]}; }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq neg(Fq a) const { return Fq{neg1_[a.code]}; }
  Fq mul(Fq a, Fq b) const { return Fq{mul1_[a.code * q_ + b.code]}; }
  Fq inv(Fq a) const;
  Fq from_int(std::int64_t n) const;
  /// Absolute trace F_q -> F_p, as an integer in [0, p).
  std::uint32_t trace(Fq a) const { return trace_[a.code]; }

  // F_{q^3}

  Fq3 add(Fq3 a, Fq3 b) const {
    if (!add3_.empty()) return Fq3{add3_[a.code * Q_ + b.code]};
    return add_digitwise(a, b);
  }
  Fq3 sub(Fq3 a, Fq3 b) const { return add(a, neg(b)); }
  Fq3 neg(Fq3 a) const { return Fq3{neg3_[a.code]}; }
  Fq3 mul(Fq3 a, Fq3 b) const {
    if (a.code == 0 || b.code == 0) return Fq3{};
    return Fq3{exp_[log_[a.code] + log_[b.code]]};
  }
  Fq3 inv(Fq3 a) const;
  Fq3 pow(Fq3 a, std::uint64_t e) const;
  Fq3 frob(Fq3 a) const { return Fq3{frob_[a.code]}; }
  Fq3 frob2(Fq3 a) const { return Fq3{frob_[frob_[a.code]]}; }
  /// t + t^q + t^{q^2}.
  Fq phi0(Fq3 a) const { return Fq{phi0_[a.code]}; }
  /// phi0(eta * t).
  Fq pi_q(Fq3 a) const { return Fq{pi_[a.code]}; }
  /// t^{1+q+q^2}.
  Fq norm(Fq3 a) const { return Fq{norm_[a.code]}; }
  /// t^{q+1}.
  Fq3 pow_q1(Fq3 a) const { return mul(a, frob(a)); }

  Fq3 embed(Fq c) const { return Fq3{c.code}; }
  bool in_base(Fq3 a) const { return a.code < q_; }
  /// Projection of an element of the embedded F_q; throws otherwise.
  Fq to_base(Fq3 a) const;
  Fq3 scale(Fq c, Fq3 a) const { return mul(embed(c), a); }

  /// Base-p digits of the code, i.e. coordinates over F_p (length 3k).
  std::vector<std::uint32_t> fp_coords(Fq3 a) const;
  Fq3 from_fp_coords(const std::vector<std::uint32_t>& v) const;
  /// F_q coordinates (c0, c1, c2).
  Fq coord(Fq3 a, int i) const;

  /// Matrix over F_p of an F_p-linear map F_{q^3} -> F_{q^3}.
  template <class Map>
  FpMatrix linear_map_matrix(Map&& map) const {
    const std::size_t n = 3 * k_;
    FpMatrix m(n, n, p_);
    std::uint32_t basis = 1;
    for (std::size_t c = 0; c < n; ++c, basis *= p_) m.set_column(c, fp_coords(map(Fq3{basis})));
    return m;
  }

  /// Polynomial arithmetic, independent of the log tables. Used while
  /// building and as a test oracle.
  Fq3 mul_poly(Fq3 a, Fq3 b) const;

  std::string describe(Fq a) const;
  std::string describe(Fq3 a) const;

 private:
  Fq3 add_digitwise(Fq3 a, Fq3 b) const;
  void build_base_field();
  void build_extension();
  void build_maps();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  std::uint32_t Q_;
  std::vector<std::uint32_t> f_;
  std::vector<std::uint32_t> g_;
  Fq3 eta_;

  std::vector<std::uint32_t> add1_, mul1_, neg1_, inv1_, trace_;
  std::vector<std::uint32_t> add3_, neg3_, log_, exp_, frob_, phi0_, pi_, norm_;
  FpMatrix frob_matrix_;
};

/// The context with deterministic defaults: smallest irreducible f and g,
/// smallest admissible eta.
FieldTower build_tower(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> f = {},
                       std::vector<std::uint32_t> g = {});

Fq3 frobenius_q(const FieldTower& ctx, Fq3 x);
Fq phi0(const FieldTower& ctx, Fq3 x);
Fq pi_q(const FieldTower& ctx, Fq3 x);

/// u t^{q^2} + u^q t^q. Throws ZeroTwist for u = 0.
Fq3 zeta(const FieldTower& ctx, Fq3 u, Fq3 t);
/// Inverse of t -> zeta(u, t).
Fq3 zeta_inv(const FieldTower& ctx, Fq3 u, Fq3 s);

/// Canonical transversal of the cosets of a*F_q in F_{q^3}.
///
/// Row-reduce the line a*F_q over F_p; the representatives are the
/// elements whose digits vanish at the pivot columns. They form an F_p
/// subspace containing 0, listed in increasing code order.
class Transversal {
 public:
  Transversal(const FieldTower& ctx, Fq3 a);

  Fq3 modulus() const { return a_; }
  std::uint32_t size() const;
  /// The i-th representative in increasing code order.
  Fq3 at(std::uint32_t i) const;
  /// Position of a representative; throws std::invalid_argument otherwise.
  std::uint32_t rank(Fq3 rep) const;
  /// (rep, s) with t = rep + s*a.
  std::pair<Fq3, Fq> decompose(Fq3 t) const;
  std::vector<Fq3> elements() const;

 private:
  const FieldTower* ctx_;
  Fq3 a_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

std::vector<Fq3> transversal(const FieldTower& ctx, Fq3 a);
std::pair<Fq3, Fq> decompose(const FieldTower& ctx, Fq3 a, Fq3 t);

}  // namespace d4syl
