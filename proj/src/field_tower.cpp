#include "d4syl/field_tower.hpp"

#include <sstream>
#include <stdexcept>

#include "d4syl/errors.hpp"

namespace d4syl {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, constant first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + std::uint64_t{p - lead} * m[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint64_t code, std::uint32_t p, std::size_t n) {
  Poly d(n);
  for (std::size_t i = 0; i < n; ++i, code /= p) d[i] = static_cast<std::uint32_t>(code % p);
  return d;
}

bool irreducible_over_fp(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly m = digits_of(c, p, d);
      m.push_back(1);
      if (poly_mod(f, m, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> split_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), k);
}

FieldTower::FieldTower(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> f,
                       std::vector<std::uint32_t> g)
    : p_(p), k_(k), f_(std::move(f)), g_(std::move(g)) {
  if (p == 2 || !is_prime(p)) throw EvenCharacteristic("p must be an odd prime, got " + std::to_string(p));
  if (k == 0) throw std::invalid_argument("k must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q * q * q > kMaxOrder3) throw TooLarge("q^3 exceeds " + std::to_string(kMaxOrder3));
  }
  q_ = static_cast<std::uint32_t>(q);
  Q_ = q_ * q_ * q_;
  build_base_field();
  build_extension();
  build_maps();
}

void FieldTower::build_base_field() {
  if (f_.empty()) {
    for (std::uint32_t c = 0;; ++c) {
      Poly cand = digits_of(c, p_, k_);
      cand.push_back(1);
      if (irreducible_over_fp(cand, p_)) {
        f_ = cand;
        break;
      }
    }
  } else {
    if (f_.size() != k_ + 1 || f_.back() != 1) throw ReduciblePolynomial("f must be monic of degree k");
    for (auto c : f_)
      if (c >= p_) throw ReduciblePolynomial("f coefficient out of range");
    if (!irreducible_over_fp(f_, p_)) throw ReduciblePolynomial("f is reducible over F_p");
  }

  add1_.resize(std::size_t{q_} * q_);
  mul1_.resize(std::size_t{q_} * q_);
  neg1_.resize(q_);
  inv1_.assign(q_, 0);
  trace_.resize(q_);
  auto encode = [&](const Poly& d) {
    std::uint32_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p_ + d[i];
    return code;
  };
  for (std::uint32_t a = 0; a < q_; ++a) {
    const Poly da = digits_of(a, p_, k_);
    Poly na(k_);
    for (std::uint32_t i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
    neg1_[a] = encode(na);
    for (std::uint32_t b = 0; b < q_; ++b) {
      const Poly db = digits_of(b, p_, k_);
      Poly sum(k_);
      for (std::uint32_t i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
      add1_[a * q_ + b] = encode(sum);
      Poly prod(2 * k_, 0);
      for (std::uint32_t i = 0; i < k_; ++i)
        for (std::uint32_t j = 0; j < k_; ++j) prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_);
      Poly red = poly_mod(prod, f_, p_);
      red.resize(k_, 0);
      mul1_[a * q_ + b] = encode(red);
    }
  }
  for (std::uint32_t a = 1; a < q_; ++a)
    for (std::uint32_t b = 1; b < q_; ++b)
      if (mul1_[a * q_ + b] == 1) inv1_[a] = b;
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t acc = 0;
    std::uint32_t power = a;
    for (std::uint32_t i = 0; i < k_; ++i) {
      acc = add1_[acc * q_ + power];
      std::uint32_t next = 1;
      for (std::uint32_t j = 0; j < p_; ++j) next = mul1_[next * q_ + power];
      power = next;
    }
    if (acc >= p_) throw std::logic_error("absolute trace left F_p");
    trace_[a] = acc;
  }
}

Fq FieldTower::inv(Fq a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero in F_q");
  return Fq{inv1_[a.code]};
}

Fq FieldTower::from_int(std::int64_t n) const {
  const std::int64_t r = ((n % p_) + p_) % p_;
  return Fq{static_cast<std::uint32_t>(r)};
}

Fq3 FieldTower::mul_poly(Fq3 a, Fq3 b) const {
  Fq x[3] = {coord(a, 0), coord(a, 1), coord(a, 2)};
  Fq y[3] = {coord(b, 0), coord(b, 1), coord(b, 2)};
  Fq r[5] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i + j] = add(r[i + j], mul(x[i], y[j]));
  for (int d = 4; d >= 3; --d) {
    const Fq c = r[d];
    r[d] = Fq{};
    for (int i = 0; i < 3; ++i) r[d - 3 + i] = sub(r[d - 3 + i], mul(c, Fq{g_[i]}));
  }
  return Fq3{r[0].code + r[1].code * q_ + r[2].code * q_ * q_};
}

void FieldTower::build_extension() {
  auto has_root = [&](const std::vector<std::uint32_t>& g) {
    for (std::uint32_t x = 0; x < q_; ++x) {
      Fq v{g[3]};
      for (int i = 2; i >= 0; --i) v = add(mul(v, Fq{x}), Fq{g[i]});
      if (v.code == 0) return true;
    }
    return false;
  };
  if (g_.empty()) {
    for (std::uint32_t c = 0;; ++c) {
      std::vector<std::uint32_t> cand = {c % q_, (c / q_) % q_, c / (q_ * q_), 1};
      if (!has_root(cand)) {
        g_ = cand;
        break;
      }
    }
  } else {
    if (g_.size() != 4 || g_[3] != 1) throw ReduciblePolynomial("g must be monic of degree 3");
    for (auto c : g_)
      if (c >= q_) throw ReduciblePolynomial("g coefficient out of range");
    if (has_root(g_)) throw ReduciblePolynomial("g has a root in F_q");
  }

  neg3_.resize(Q_);
  for (std::uint32_t a = 0; a < Q_; ++a) {
    std::uint32_t out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t c = a; scale < Q_; c /= p_, scale *= p_) out += ((p_ - c % p_) % p_) * scale;
    neg3_[a] = out;
  }
  if (Q_ <= 1331) {
    add3_.resize(std::size_t{Q_} * Q_);
    for (std::uint32_t a = 0; a < Q_; ++a)
      for (std::uint32_t b = 0; b < Q_; ++b) add3_[a * Q_ + b] = add_digitwise(Fq3{a}, Fq3{b}).code;
  }

  auto pow_poly = [&](Fq3 a, std::uint64_t e) {
    Fq3 r{1};
    for (; e != 0; e >>= 1) {
      if (e & 1u) r = mul_poly(r, a);
      a = mul_poly(a, a);
    }
    return r;
  };
  const std::uint64_t n = Q_ - 1;
  const auto factors = prime_factors(n);
  Fq3 gen{};
  for (std::uint32_t c = 2; c < Q_; ++c) {
    bool primitive = true;
    for (auto r : factors) {
      if (pow_poly(Fq3{c}, n / r).code == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = Fq3{c};
      break;
    }
  }
  if (gen.code == 0) throw std::logic_error("no primitive element; g is not irreducible");
  log_.assign(Q_, 0);
  exp_.assign(2 * n, 0);
  Fq3 x{1};
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = exp_[i + n] = x.code;
    log_[x.code] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, gen);
  }
  if (x.code != 1) throw std::logic_error("generator order mismatch");

  frob_matrix_ = linear_map_matrix([&](Fq3 b) { return pow_poly(b, q_); });
  const FpMatrix cube = frob_matrix_ * frob_matrix_ * frob_matrix_;
  if (!(cube == FpMatrix::identity(3 * k_, p_))) throw std::logic_error("Frobenius matrix does not have order 3");
  frob_.resize(Q_);
  for (std::uint32_t a = 0; a < Q_; ++a) frob_[a] = from_fp_coords(frob_matrix_.apply(fp_coords(Fq3{a}))).code;
}

void FieldTower::build_maps() {
  phi0_.resize(Q_);
  norm_.resize(Q_);
  for (std::uint32_t a = 0; a < Q_; ++a) {
    const Fq3 x{a};
    phi0_[a] = to_base(add(add(x, frob(x)), frob2(x))).code;
    norm_[a] = to_base(mul(mul(x, frob(x)), frob2(x))).code;
  }
  bool found = false;
  for (std::uint32_t c = q_; c < Q_; ++c) {
    if (phi0_[c] == 1) {
      eta_ = Fq3{c};
      found = true;
      break;
    }
  }
  if (!found) throw NoEta("no eta with phi0(eta) = 1 outside F_q");
  const Fq3 twist = mul(eta_, inv(frob2(eta_)));
  if (add(Fq3{1}, twist).code == 0) throw std::logic_error("1 + eta^(1-q^2) vanished");
  pi_.resize(Q_);
  for (std::uint32_t a = 0; a < Q_; ++a) pi_[a] = phi0_[mul(eta_, Fq3{a}).code];
}

Fq3 FieldTower::add_digitwise(Fq3 a, Fq3 b) const {
  std::uint32_t out = 0;
  std::uint32_t scale = 1;
  for (std::uint32_t x = a.code, y = b.code; scale < Q_; x /= p_, y /= p_, scale *= p_) out += ((x % p_ + y % p_) % p_) * scale;
  return Fq3{out};
}

Fq3 FieldTower::inv(Fq3 a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero in F_q^3");
  const std::uint32_t n = Q_ - 1;
  return Fq3{exp_[(n - log_[a.code]) % n]};
}

Fq3 FieldTower::pow(Fq3 a, std::uint64_t e) const {
  if (e == 0) return Fq3{1};
  if (a.code == 0) return Fq3{};
  const std::uint64_t n = Q_ - 1;
  return Fq3{exp_[(log_[a.code] * (e % n)) % n]};
}

Fq FieldTower::to_base(Fq3 a) const {
  if (!in_base(a)) throw std::invalid_argument("element is not in F_q: " + describe(a));
  return Fq{a.code};
}

Fq FieldTower::coord(Fq3 a, int i) const {
  std::uint32_t c = a.code;
  for (int j = 0; j < i; ++j) c /= q_;
  return Fq{c % q_};
}

std::vector<std::uint32_t> FieldTower::fp_coords(Fq3 a) const { return digits_of(a.code, p_, 3 * k_); }

Fq3 FieldTower::from_fp_coords(const std::vector<std::uint32_t>& v) const {
  std::uint32_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * p_ + v[i] % p_;
  return Fq3{code};
}

std::string FieldTower::describe(Fq a) const {
  std::ostringstream os;
  os << '[';
  const auto d = digits_of(a.code, p_, k_);
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

std::string FieldTower::describe(Fq3 a) const {
  std::ostringstream os;
  os << '[';
  const auto d = fp_coords(a);
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ']';
  return os.str();
}

FieldTower build_tower(std::uint32_t p, std::uint32_t k, std::vector<std::uint32_t> f, std::vector<std::uint32_t> g) {
  return FieldTower(p, k, std::move(f), std::move(g));
}

Fq3 frobenius_q(const FieldTower& ctx, Fq3 x) { return ctx.frob(x); }
Fq phi0(const FieldTower& ctx, Fq3 x) { return ctx.phi0(x); }
Fq pi_q(const FieldTower& ctx, Fq3 x) { return ctx.pi_q(x); }

Fq3 zeta(const FieldTower& ctx, Fq3 u, Fq3 t) {
  if (u.code == 0) throw ZeroTwist("zeta_u needs u != 0");
  return ctx.add(ctx.mul(u, ctx.frob2(t)), ctx.mul(ctx.frob(u), ctx.frob(t)));
}

Fq3 zeta_inv(const FieldTower& ctx, Fq3 u, Fq3 s) {
  if (u.code == 0) throw ZeroTwist("zeta_u needs u != 0");
  const FpMatrix m = ctx.linear_map_matrix([&](Fq3 t) { return zeta(ctx, u, t); });
  const auto x = m.solve(ctx.fp_coords(s));
  if (!x) throw std::logic_error("zeta_u is not invertible");
  return ctx.from_fp_coords(*x);
}

Transversal::Transversal(const FieldTower& ctx, Fq3 a) : ctx_(&ctx), a_(a) {
  if (a.code == 0) throw ZeroModulus("transversal of 0*F_q");
  const std::size_t n = 3 * ctx.k();
  FpMatrix line(ctx.k(), n, ctx.p());
  std::uint32_t basis = 1;
  for (std::uint32_t j = 0; j < ctx.k(); ++j, basis *= ctx.p()) {
    const auto v = ctx.fp_coords(ctx.mul(a, Fq3{basis}));
    for (std::size_t c = 0; c < n; ++c) line.set(j, c, v[c]);
  }
  pivots_ = line.rref();
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    std::vector<std::uint32_t> row(n);
    for (std::size_t c = 0; c < n; ++c) row[c] = line(r, c);
    rows_.push_back(std::move(row));
  }
  std::size_t next = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (next < pivots_.size() && pivots_[next] == c) {
      ++next;
      continue;
    }
    free_.push_back(c);
  }
}

std::uint32_t Transversal::size() const { return ctx_->q() * ctx_->q(); }

Fq3 Transversal::at(std::uint32_t i) const {
  std::vector<std::uint32_t> d(3 * ctx_->k(), 0);
  for (std::size_t m = 0; m < free_.size(); ++m, i /= ctx_->p()) d[free_[m]] = i % ctx_->p();
  return ctx_->from_fp_coords(d);
}

std::uint32_t Transversal::rank(Fq3 rep) const {
  const auto d = ctx_->fp_coords(rep);
  for (auto pc : pivots_)
    if (d[pc] != 0) throw std::invalid_argument("not a transversal element");
  std::uint32_t r = 0;
  for (std::size_t m = free_.size(); m-- > 0;) r = r * ctx_->p() + d[free_[m]];
  return r;
}

std::pair<Fq3, Fq> Transversal::decompose(Fq3 t) const {
  const std::uint32_t p = ctx_->p();
  auto d = ctx_->fp_coords(t);
  std::vector<std::uint32_t> line(d.size(), 0);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const std::uint64_t c = d[pivots_[r]];
    for (std::size_t j = 0; j < d.size(); ++j) line[j] = static_cast<std::uint32_t>((line[j] + c * rows_[r][j]) % p);
  }
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = (d[j] + p - line[j]) % p;
  const Fq3 l = ctx_->from_fp_coords(line);
  return {ctx_->from_fp_coords(d), ctx_->to_base(ctx_->mul(l, ctx_->inv(a_)))};
}

std::vector<Fq3> Transversal::elements() const {
  std::vector<Fq3> out;
  out.reserve(size());
  for (std::uint32_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

std::vector<Fq3> transversal(const FieldTower& ctx, Fq3 a) { return Transversal(ctx, a).elements(); }

std::pair<Fq3, Fq> decompose(const FieldTower& ctx, Fq3 a, Fq3 t) { return Transversal(ctx, a).decompose(t); }

}  // namespace d4syl
