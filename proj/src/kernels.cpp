#include "tropid/kernels.hpp"

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace tropid {
namespace {

void check_product_shape(const IntTropMatrix& a, const IntTropMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("int product: inner dimensions differ");
}

inline void product_row(const IntTropMatrix& a, const IntTropMatrix& b, std::size_t i, std::int64_t* out) {
  const std::size_t m = b.cols();
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const std::int64_t x = a(i, k);
    if (x == kIntBottom) continue;
    const std::int64_t* brow = b.data() + k * m;
    for (std::size_t j = 0; j < m; ++j) {
      if (brow[j] == kIntBottom) continue;
      const std::int64_t s = x + brow[j];
      if (s > out[j]) out[j] = s;
    }
  }
}

}  // namespace

IntTropMatrix IntTropMatrix::identity(std::size_t n) {
  IntTropMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 0;
  return id;
}

IntTropMatrix IntTropMatrix::from_trop(const TropMatrix& a) {
  IntTropMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const TropScalar& x = a(i, j);
      if (x.is_bottom()) continue;
      if (!x.value().is_integer()) throw std::invalid_argument("IntTropMatrix: non-integer entry " + x.to_string());
      out(i, j) = x.value().num();
    }
  }
  return out;
}

TropMatrix IntTropMatrix::to_trop() const {
  TropMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != kIntBottom) out(i, j) = TropScalar((*this)(i, j));
  return out;
}

IntTropMatrix mul_serial(const IntTropMatrix& a, const IntTropMatrix& b) {
  check_product_shape(a, b);
  IntTropMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, i, c.data() + i * b.cols());
  return c;
}

IntTropMatrix mul_parallel(const IntTropMatrix& a, const IntTropMatrix& b) {
  check_product_shape(a, b);
  IntTropMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    product_row(a, b, static_cast<std::size_t>(i), c.data() + static_cast<std::size_t>(i) * b.cols());
  }
  return c;
}

IntTropMatrix int_pow(const IntTropMatrix& a, std::uint64_t t) {
  if (a.rows() != a.cols()) throw ShapeError("int_pow: matrix is not square");
  IntTropMatrix result = IntTropMatrix::identity(a.rows());
  IntTropMatrix base = a;
  bool first = true;
  while (t > 0) {
    if (t & 1U) {
      result = first ? base : mul_serial(result, base);
      first = false;
    }
    t >>= 1U;
    if (t > 0) base = mul_serial(base, base);
  }
  return result;
}

IntTropMatrix evaluate_int(const Word& w, const IntTropMatrix& a, const IntTropMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("evaluate_int: A and B must be square of equal size");
  }
  std::map<std::pair<Letter, std::uint64_t>, IntTropMatrix> powers;
  auto power = [&](Letter x, std::uint64_t k) -> const IntTropMatrix& {
    auto key = std::pair(x, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, int_pow(x == Letter::a ? a : b, k)).first;
    return it->second;
  };
  const auto& runs = w.runs();
  IntTropMatrix acc = power(runs.front().letter, runs.front().count);
  for (std::size_t r = 1; r < runs.size(); ++r) acc = mul_serial(acc, power(runs[r].letter, runs[r].count));
  return acc;
}

IntTropMatrix IntTermEvaluator::operator()(const WordTerm& w) {
  if (w.is_leaf()) return evaluate_int(w.outer, a_, b_);
  if (auto it = memo_.find(&w); it != memo_.end()) return it->second;
  IntTropMatrix x = (*this)(*w.a_sub);
  IntTropMatrix y = (*this)(*w.b_sub);
  IntTropMatrix value = evaluate_int(w.outer, x, y);
  memo_.emplace(&w, value);
  return value;
}

IntTropMatrix evaluate_int(const WordTerm& w, const IntTropMatrix& a, const IntTropMatrix& b) {
  return IntTermEvaluator(a, b)(w);
}

}  // namespace tropid
