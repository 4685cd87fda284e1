#include "tropid/lp.hpp"

#include <numeric>
#include <stdexcept>

namespace tropid {
namespace {

// Maximize c.y subject to M y <= rhs, y >= 0, with rhs >= 0 so the origin
// is a feasible basis. Tucker tableau: rows are basic variables, columns
// nonbasic ones. Returns the optimal y.
class Tableau {
 public:
  /// Variables with index >= entering_limit never enter the basis.
  Tableau(std::vector<std::vector<mpq_class>> m, std::vector<mpq_class> rhs, std::vector<mpq_class> c,
          std::size_t entering_limit = static_cast<std::size_t>(-1))
      : m_(std::move(m)), rhs_(std::move(rhs)), cost_(std::move(c)), entering_limit_(entering_limit) {
    rows_ = m_.size();
    cols_ = cost_.size();
    basic_.resize(rows_);
    nonbasic_.resize(cols_);
    // Variables 0..cols-1 are structural, cols..cols+rows-1 slacks.
    std::iota(nonbasic_.begin(), nonbasic_.end(), 0);
    std::iota(basic_.begin(), basic_.end(), cols_);
  }

  std::vector<mpq_class> solve() {
    for (;;) {
      // Entering: largest reduced cost; after a long run of degenerate
      // pivots, Bland's smallest index, which cannot cycle.
      const bool bland = degenerate_run_ > kDegenerateLimit;
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(cost_[j]) <= 0 || nonbasic_[j] >= entering_limit_) continue;
        if (enter == cols_ || (bland ? nonbasic_[j] < nonbasic_[enter] : cost_[j] > cost_[enter])) enter = j;
      }
      if (enter == cols_) break;
      std::size_t leave = rows_;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(m_[i][enter]) <= 0) continue;
        mpq_class ratio = rhs_[i] / m_[i][enter];
        if (leave == rows_ || ratio < best_ratio || (ratio == best_ratio && basic_[i] < basic_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) throw std::logic_error("separate_point: unbounded program");
      degenerate_run_ = sgn(best_ratio) == 0 ? degenerate_run_ + 1 : 0;
      pivot(leave, enter);
    }
    std::vector<mpq_class> y(cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      if (basic_[i] < cols_) y[basic_[i]] = rhs_[i];
    return y;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const mpq_class p = m_[r][s];
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != s) m_[r][j] /= p;
    rhs_[r] /= p;
    m_[r][s] = 1 / p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(m_[i][s]) == 0) continue;
      const mpq_class f = m_[i][s];
      for (std::size_t j = 0; j < cols_; ++j)
        if (j != s) m_[i][j] -= f * m_[r][j];
      rhs_[i] -= f * rhs_[r];
      m_[i][s] = -f * m_[r][s];
    }
    const mpq_class f = cost_[s];
    for (std::size_t j = 0; j < cols_; ++j)
      if (j != s) cost_[j] -= f * m_[r][j];
    cost_[s] = -f * m_[r][s];
    std::swap(basic_[r], nonbasic_[s]);
  }

  std::vector<std::vector<mpq_class>> m_;
  std::vector<mpq_class> rhs_;
  std::vector<mpq_class> cost_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::size_t entering_limit_;
  std::size_t degenerate_run_ = 0;
  static constexpr std::size_t kDegenerateLimit = 50;
};

std::uint64_t coordinate_sum(const ExponentVector& v) {
  return std::accumulate(v.begin(), v.end(), std::uint64_t{0});
}

// Phase I for p = sum lambda_k v_k, sum lambda_k = 1, lambda >= 0 with one
// artificial per row; feasible iff the artificials can all be driven to 0.
bool in_hull(const ExponentVector& p, const std::vector<ExponentVector>& hull) {
  const std::size_t d = p.size();
  const std::size_t m = hull.size();
  std::vector<std::vector<mpq_class>> rows(d + 1, std::vector<mpq_class>(m));
  std::vector<mpq_class> rhs(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < m; ++k) rows[i][k] = hull[k][i];
    rhs[i] = p[i];
  }
  for (std::size_t k = 0; k < m; ++k) rows[d][k] = 1;
  rhs[d] = 1;
  std::vector<mpq_class> cost(m);
  mpq_class target = 0;
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t k = 0; k < m; ++k) cost[k] += rows[i][k];
    target += rhs[i];
  }
  const std::vector<mpq_class> original = cost;
  const std::vector<mpq_class> y = Tableau(std::move(rows), std::move(rhs), cost, m).solve();
  mpq_class value = 0;
  for (std::size_t k = 0; k < m; ++k) value += original[k] * y[k];
  return value == target;
}

}  // namespace

std::optional<std::vector<mpq_class>> separate_point(const ExponentVector& p, const std::vector<ExponentVector>& hull) {
  if (hull.empty()) throw std::invalid_argument("separate_point: empty hull");
  const std::size_t d = p.size();
  const std::uint64_t lv = coordinate_sum(hull.front());
  const std::uint64_t lp = coordinate_sum(p);
  for (const auto& v : hull)
    if (v.size() != d || coordinate_sum(v) != lv) throw std::invalid_argument("separate_point: inconsistent hull");
  if (lp == lv && in_hull(p, hull)) return std::nullopt;

  // Shift x = x' - 1 and z = z' - lv so that every variable is nonnegative
  // and the origin is feasible: <v_k, x'> - z' <= 0, x' <= 2.
  std::vector<std::vector<mpq_class>> m;
  std::vector<mpq_class> rhs;
  for (const auto& v : hull) {
    std::vector<mpq_class> row(d + 1);
    for (std::size_t i = 0; i < d; ++i) row[i] = v[i];
    row[d] = -1;
    m.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<mpq_class> row(d + 1);
    row[i] = 1;
    m.push_back(std::move(row));
    rhs.emplace_back(2);
  }
  std::vector<mpq_class> cost(d + 1);
  for (std::size_t i = 0; i < d; ++i) cost[i] = p[i];
  cost[d] = -1;

  const std::vector<mpq_class> y = Tableau(std::move(m), std::move(rhs), cost).solve();
  mpq_class optimum = 0;
  for (std::size_t i = 0; i <= d; ++i) optimum += cost[i] * y[i];
  optimum += mpq_class(static_cast<unsigned long>(lv)) - mpq_class(static_cast<unsigned long>(lp));
  if (sgn(optimum) <= 0) return std::nullopt;

  std::vector<mpq_class> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = y[i] - 1;
  return x;
}

}  // namespace tropid
