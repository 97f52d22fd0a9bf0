#include "d4syl/cyclotomic.hpp"

#include <sstream>
#include <stdexcept>

#include "d4syl/errors.hpp"

namespace d4syl {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow("cyclotomic addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow("cyclotomic subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow("cyclotomic multiplication overflow");
  return r;
}

}  // namespace

CycInt::CycInt(std::uint32_t p, std::int64_t n) : c_(p, 0) { c_[0] = n; }

CycInt CycInt::root(std::uint32_t p, std::int64_t e) {
  std::vector<std::int64_t> c(p, 0);
  c[static_cast<std::size_t>(((e % p) + p) % p)] = 1;
  return CycInt(std::move(c));
}

CycInt CycInt::from_coeffs(std::uint32_t p, std::span<const std::int64_t> coeffs) {
  if (coeffs.size() != p - 1) throw std::invalid_argument("expected p-1 coefficients");
  std::vector<std::int64_t> c(coeffs.begin(), coeffs.end());
  c.push_back(0);
  return CycInt(std::move(c));
}

void CycInt::normalize() {
  if (c_.empty()) return;
  const std::int64_t top = c_.back();
  if (top == 0) return;
  for (auto& x : c_) x = checked_sub(x, top);
}

void CycInt::check_same(const CycInt& o) const {
  if (c_.size() != o.c_.size()) throw std::invalid_argument("CycInt: mismatched p");
}

bool CycInt::is_zero() const {
  for (auto x : c_)
    if (x != 0) return false;
  return true;
}

bool CycInt::is_integer(std::int64_t& out) const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  out = c_.empty() ? 0 : c_[0];
  return true;
}

CycInt CycInt::operator+(const CycInt& o) const {
  check_same(o);
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_add(c_[i], o.c_[i]);
  return CycInt(std::move(c));
}

CycInt& CycInt::operator+=(const CycInt& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = checked_add(c_[i], o.c_[i]);
  return *this;
}

CycInt CycInt::operator-(const CycInt& o) const {
  check_same(o);
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(c_[i], o.c_[i]);
  return CycInt(std::move(c));
}

CycInt CycInt::operator-() const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_sub(0, c_[i]);
  return CycInt(std::move(c));
}

CycInt CycInt::operator*(const CycInt& o) const {
  check_same(o);
  const std::size_t p = c_.size();
  std::vector<std::int64_t> c(p, 0);
  for (std::size_t i = 0; i < p; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < p; ++j) {
      if (o.c_[j] == 0) continue;
      const std::size_t e = (i + j) % p;
      c[e] = checked_add(c[e], checked_mul(c_[i], o.c_[j]));
    }
  }
  return CycInt(std::move(c));
}

CycInt CycInt::conj() const {
  const std::size_t p = c_.size();
  std::vector<std::int64_t> c(p, 0);
  for (std::size_t i = 0; i < p; ++i) c[(p - i) % p] = c_[i];
  return CycInt(std::move(c));
}

CycInt CycInt::scaled(std::int64_t n) const {
  std::vector<std::int64_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = checked_mul(c_[i], n);
  return CycInt(std::move(c));
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  os << '[';
  const auto cs = coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? "," : "") << cs[i];
  os << ']';
  return os.str();
}

CycInt add(const CycInt& a, const CycInt& b) { return a + b; }
CycInt mul(const CycInt& a, const CycInt& b) { return a * b; }
CycInt neg(const CycInt& a) { return -a; }
CycInt conj(const CycInt& a) { return a.conj(); }
CycInt int_scale(std::int64_t n, const CycInt& a) { return a.scaled(n); }
bool is_zero(const CycInt& a) { return a.is_zero(); }

CycInt RootSum::value() const { return value_shifted(0); }

CycInt RootSum::value_shifted(std::uint32_t shift) const {
  const auto p = static_cast<std::uint32_t>(count_.size());
  const std::int64_t top = count_[(p - 1 + p - shift % p) % p];
  std::vector<std::int64_t> c(p - 1);
  for (std::uint32_t e = 0; e + 1 < p; ++e) c[e] = count_[(e + p - shift % p) % p] - top;
  return CycInt::from_coeffs(p, c);
}

CycInt theta(const FieldTower& ctx, Fq b) { return CycInt::root(ctx.p(), ctx.trace(b)); }

CycInt theta_pi(const FieldTower& ctx, Fq3 x) { return theta(ctx, ctx.pi_q(x)); }

}  // namespace d4syl
