#include "tropid/matrix.hpp"

#include <numeric>
#include <sstream>

namespace tropid {

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

TropMatrix::TropMatrix(std::size_t rows, std::size_t cols, std::vector<TropScalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw ShapeError("entry count " + std::to_string(entries_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

TropMatrix::TropMatrix(std::initializer_list<std::initializer_list<TropScalar>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

TropMatrix TropMatrix::identity(std::size_t n) {
  TropMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = TropScalar(0);
  return m;
}

TropMatrix TropMatrix::filled(std::size_t rows, std::size_t cols, const TropScalar& value) {
  return TropMatrix(rows, cols, std::vector<TropScalar>(rows * cols, value));
}

bool TropMatrix::all_bottom() const {
  for (const auto& x : entries_) {
    if (x.is_finite()) return false;
  }
  return true;
}

TropMatrix TropMatrix::transpose() const {
  TropMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

TropMatrix TropMatrix::column(std::size_t j) const {
  TropMatrix c(rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
  return c;
}

TropMatrix TropMatrix::row_matrix(std::size_t i) const {
  TropMatrix r(1, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
  return r;
}

TropMatrix TropMatrix::submatrix(std::span<const std::size_t> row_ids,
                                 std::span<const std::size_t> col_ids) const {
  TropMatrix s(row_ids.size(), col_ids.size());
  for (std::size_t a = 0; a < row_ids.size(); ++a)
    for (std::size_t b = 0; b < col_ids.size(); ++b) s(a, b) = (*this)(row_ids[a], col_ids[b]);
  return s;
}

std::string TropMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << ", ";
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << (*this)(i, j).to_string();
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

void require_square(const TropMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw ShapeError(std::string(op) + " requires a square matrix, got " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()));
  }
}

TropMatrix mat_mul(const TropMatrix& a, const TropMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  TropMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const TropScalar& aik = a(i, k);
      if (aik.is_bottom()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const TropScalar& bkj = b(k, j);
        if (bkj.is_bottom()) continue;
        TropScalar s = aik + bkj;
        TropScalar& cij = c(i, j);
        if (cij < s) cij = s;
      }
    }
  }
  return c;
}

TropMatrix mat_max(const TropMatrix& a, const TropMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("mat_max: shape mismatch");
  TropMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = tmax(a(i, j), b(i, j));
  return c;
}

TropMatrix operator*(const TropMatrix& a, const TropMatrix& b) { return mat_mul(a, b); }
TropMatrix operator|(const TropMatrix& a, const TropMatrix& b) { return mat_max(a, b); }

TropMatrix mat_pow(const TropMatrix& a, std::uint64_t t) {
  require_square(a, "mat_pow");
  if (t == 0) return TropMatrix::identity(a.rows());
  TropMatrix p = a;
  for (std::uint64_t s = 1; s < t; ++s) p = mat_mul(p, a);
  return p;
}

TropMatrix mat_pow_fast(const TropMatrix& a, std::uint64_t t) {
  require_square(a, "mat_pow_fast");
  TropMatrix result = TropMatrix::identity(a.rows());
  TropMatrix base = a;
  while (t > 0) {
    if (t & 1U) result = mat_mul(result, base);
    t >>= 1U;
    if (t) base = mat_mul(base, base);
  }
  return result;
}

TropMatrix add_scalar(const TropMatrix& a, const Rational& alpha) {
  TropMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + TropScalar(alpha);
  return c;
}

TropScalar trace(const TropMatrix& a) {
  require_square(a, "trace");
  TropScalar s(0);
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

std::uint64_t lcm_upto(unsigned n) {
  if (n == 0) throw std::invalid_argument("lcm_upto requires n >= 1");
  std::uint64_t l = 1;
  for (std::uint64_t k = 2; k <= n; ++k) {
    std::uint64_t g = std::gcd(l, k);
    std::uint64_t out;
    if (__builtin_mul_overflow(l / g, k, &out)) throw ArithmeticOverflow("lcm_upto overflow");
    l = out;
  }
  return l;
}

}  // namespace tropid
