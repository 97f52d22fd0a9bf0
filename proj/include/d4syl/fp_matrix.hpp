#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace d4syl {

/// Dense matrix over the prime field F_p, entries kept in [0, p).
///
/// Only what the field tower and the class solver need: products,
/// reduced row echelon form, linear solves and inverses. Sizes are tiny
/// (at most 3k x 3k), so everything is plain Gaussian elimination.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static FpMatrix identity(std::size_t n, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return p_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint32_t v) { data_[r * cols_ + c] = v % p_; }

  void set_column(std::size_t c, std::span<const std::uint32_t> values);
  std::vector<std::uint32_t> column(std::size_t c) const;

  FpMatrix operator*(const FpMatrix& rhs) const;
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;
  bool operator==(const FpMatrix& rhs) const = default;

  /// Row-reduces in place; returns the pivot column of each nonzero row.
  std::vector<std::size_t> rref();
  std::size_t rank() const;

  /// Some solution of A x = b, or nullopt when the system is inconsistent.
  std::optional<std::vector<std::uint32_t>> solve(std::span<const std::uint32_t> b) const;
  std::optional<FpMatrix> inverse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> data_;
};

/// a^(p-2) mod p.
std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace d4syl
