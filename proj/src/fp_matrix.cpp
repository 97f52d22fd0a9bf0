#include "d4syl/fp_matrix.hpp"

#include <cassert>
#include <stdexcept>

namespace d4syl {

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("fp_inverse: zero has no inverse");
  std::uint64_t base = a % p;
  std::uint64_t result = 1;
  for (std::uint32_t e = p - 2; e != 0; e >>= 1) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void FpMatrix::set_column(std::size_t c, std::span<const std::uint32_t> values) {
  assert(values.size() == rows_);
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, values[r]);
}

std::vector<std::uint32_t> FpMatrix::column(std::size_t c) const {
  std::vector<std::uint32_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("FpMatrix: shape mismatch");
  FpMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < rhs.cols_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t l = 0; l < cols_; ++l) acc += std::uint64_t{(*this)(i, l)} * rhs(l, j) % p_;
      out.set(i, j, static_cast<std::uint32_t>(acc % p_));
    }
  }
  return out;
}

std::vector<std::uint32_t> FpMatrix::apply(std::span<const std::uint32_t> v) const {
  assert(v.size() == cols_);
  std::vector<std::uint32_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t l = 0; l < cols_; ++l) acc += std::uint64_t{(*this)(i, l)} * v[l] % p_;
    out[i] = static_cast<std::uint32_t>(acc % p_);
  }
  return out;
}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[sel * cols_ + c], data_[row * cols_ + c]);
    }
    const std::uint64_t inv = fp_inverse((*this)(row, col), p_);
    for (std::size_t c = 0; c < cols_; ++c) data_[row * cols_ + c] = static_cast<std::uint32_t>(data_[row * cols_ + c] * inv % p_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const std::uint64_t factor = (*this)(r, col);
      if (factor == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::uint64_t sub = factor * data_[row * cols_ + c] % p_;
        data_[r * cols_ + c] = static_cast<std::uint32_t>((data_[r * cols_ + c] + p_ - sub) % p_);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

std::optional<std::vector<std::uint32_t>> FpMatrix::solve(std::span<const std::uint32_t> b) const {
  assert(b.size() == rows_);
  FpMatrix aug(rows_, cols_ + 1, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) aug.set(r, c, (*this)(r, c));
    aug.set(r, cols_, b[r]);
  }
  const auto pivots = aug.rref();
  std::vector<std::uint32_t> x(cols_, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols_) return std::nullopt;
    x[pivots[r]] = aug(r, cols_);
  }
  return x;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  FpMatrix aug(n, 2 * n, p_);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, (*this)(r, c));
    aug.set(r, n + r, 1);
  }
  const auto pivots = aug.rref();
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  FpMatrix out(n, n, p_);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.set(r, c, aug(r, n + c));
  return out;
}

}  // namespace d4syl
