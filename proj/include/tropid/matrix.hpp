#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropid/scalar.hpp"

namespace tropid {

/// Raised on shape mismatches and on square-only operations given a
/// rectangular matrix.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense rows x cols matrix over the max-plus semiring, row-major.
class TropMatrix {
 public:
  TropMatrix() = default;
  /// All-bottom matrix.
  TropMatrix(std::size_t rows, std::size_t cols);
  TropMatrix(std::size_t rows, std::size_t cols, std::vector<TropScalar> entries);
  TropMatrix(std::initializer_list<std::initializer_list<TropScalar>> rows);

  static TropMatrix identity(std::size_t n);
  static TropMatrix bottom(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static TropMatrix filled(std::size_t rows, std::size_t cols, const TropScalar& value);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] bool empty() const { return rows_ == 0 || cols_ == 0; }

  const TropScalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  TropScalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  [[nodiscard]] std::span<const TropScalar> entries() const { return entries_; }
  [[nodiscard]] std::span<const TropScalar> row(std::size_t i) const {
    return std::span<const TropScalar>(entries_).subspan(i * cols_, cols_);
  }

  [[nodiscard]] bool all_bottom() const;
  [[nodiscard]] TropMatrix transpose() const;
  [[nodiscard]] TropMatrix column(std::size_t j) const;
  [[nodiscard]] TropMatrix row_matrix(std::size_t i) const;
  [[nodiscard]] TropMatrix submatrix(std::span<const std::size_t> row_ids,
                                     std::span<const std::size_t> col_ids) const;

  friend bool operator==(const TropMatrix&, const TropMatrix&) = default;

  /// "[[0, 1], [-inf, 2/3]]".
  [[nodiscard]] std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<TropScalar> entries_;
};

void require_square(const TropMatrix& a, const char* op);

/// Max-plus product: (AB)_ij = max_k A_ik + B_kj.
TropMatrix mat_mul(const TropMatrix& a, const TropMatrix& b);
/// Entrywise maximum.
TropMatrix mat_max(const TropMatrix& a, const TropMatrix& b);
/// t-fold product by iterated multiplication; A^0 = I.
TropMatrix mat_pow(const TropMatrix& a, std::uint64_t t);
/// Same value as mat_pow, by repeated squaring. Used only where no walk
/// witnesses are derived from intermediate powers.
TropMatrix mat_pow_fast(const TropMatrix& a, std::uint64_t t);
/// Adds alpha to every finite entry (tropical scalar multiple).
TropMatrix add_scalar(const TropMatrix& a, const Rational& alpha);
/// Ordinary sum of the diagonal; bottom if any diagonal entry is bottom.
TropScalar trace(const TropMatrix& a);

TropMatrix operator*(const TropMatrix& a, const TropMatrix& b);
TropMatrix operator|(const TropMatrix& a, const TropMatrix& b);

/// lcm(1, ..., n); throws ArithmeticOverflow beyond uint64.
std::uint64_t lcm_upto(unsigned n);

}  // namespace tropid
