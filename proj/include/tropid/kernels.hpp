#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropid/matrix.hpp"
#include "tropid/words.hpp"

namespace tropid {

/// Integer max-plus matrices for the hot loops (falsification, benchmarks).
/// Bottom is kIntBottom; callers keep finite values far from the int64
/// limits (falsify checks |entry| * length < 2^62 up front).
inline constexpr std::int64_t kIntBottom = std::numeric_limits<std::int64_t>::min();

class IntTropMatrix {
 public:
  IntTropMatrix() = default;
  IntTropMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, kIntBottom) {}

  static IntTropMatrix identity(std::size_t n);
  /// Throws std::invalid_argument on non-integer entries.
  static IntTropMatrix from_trop(const TropMatrix& a);
  [[nodiscard]] TropMatrix to_trop() const;

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const std::int64_t* data() const { return data_.data(); }
  std::int64_t* data() { return data_.data(); }

  friend bool operator==(const IntTropMatrix&, const IntTropMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Reference product, kept for testing the parallel one.
IntTropMatrix mul_serial(const IntTropMatrix& a, const IntTropMatrix& b);
/// OpenMP over output rows; identical results to mul_serial.
IntTropMatrix mul_parallel(const IntTropMatrix& a, const IntTropMatrix& b);

IntTropMatrix int_pow(const IntTropMatrix& a, std::uint64_t t);

/// w<A, B> with run powers cached per call.
IntTropMatrix evaluate_int(const Word& w, const IntTropMatrix& a, const IntTropMatrix& b);
/// Substitution-tree evaluation. Subtrees shared between calls on the same
/// evaluator (e.g. X and Y of both sides of an identity) are computed once.
class IntTermEvaluator {
 public:
  IntTermEvaluator(IntTropMatrix a, IntTropMatrix b) : a_(std::move(a)), b_(std::move(b)) {}
  IntTropMatrix operator()(const WordTerm& w);

 private:
  IntTropMatrix a_;
  IntTropMatrix b_;
  std::unordered_map<const WordTerm*, IntTropMatrix> memo_;
};

IntTropMatrix evaluate_int(const WordTerm& w, const IntTropMatrix& a, const IntTropMatrix& b);

}  // namespace tropid
