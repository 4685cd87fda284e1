#include "tropid/permanent.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace tropid {
namespace {

struct Enumerator {
  const TropMatrix& a;
  std::size_t cap;
  std::size_t n;
  Permutation current;
  std::vector<bool> used;
  TropScalar best;
  std::size_t ties = 0;
  std::vector<Permutation> found;

  void run(std::size_t row, const TropScalar& acc) {
    if (row == n) {
      if (acc > best) {
        best = acc;
        ties = 1;
        found.assign(1, current);
      } else if (acc == best) {
        ++ties;
        if (found.size() < cap) found.push_back(current);
      }
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || a(row, j).is_bottom()) continue;
      used[j] = true;
      current[row] = j;
      run(row + 1, acc + a(row, j));
      used[j] = false;
    }
  }
};

PermanentReport exhaustive(const TropMatrix& a, std::size_t cap) {
  Enumerator e{a, cap, a.rows(), Permutation(a.rows()), std::vector<bool>(a.rows(), false), kBottom, 0, {}};
  e.run(0, TropScalar(0));
  PermanentReport report;
  report.strategy_used = PermanentStrategy::exhaustive;
  report.value = e.best;
  if (e.best.is_finite()) {
    report.optimal_permutations = std::move(e.found);
    report.overflow = e.ties > report.optimal_permutations.size();
    report.unique = e.ties == 1;
  }
  return report;
}

// Minimization Hungarian method (potentials form) on exact rationals.
Permutation hungarian_min(const std::vector<std::vector<Rational>>& cost) {
  const std::size_t n = cost.size();
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Permutation assignment(n);
  for (std::size_t j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

// Finite weights with bottom replaced by a penalty strictly below every
// all-finite assignment; nullopt if the matrix has no finite entry.
std::optional<std::vector<std::vector<Rational>>> penalized_costs(const TropMatrix& a,
                                                                  Rational* penalty_out) {
  const std::size_t n = a.rows();
  std::optional<Rational> lo, hi;
  for (const auto& x : a.entries()) {
    if (x.is_bottom()) continue;
    if (!lo || x.value() < *lo) lo = x.value();
    if (!hi || x.value() > *hi) hi = x.value();
  }
  if (!lo) return std::nullopt;
  const auto nn = static_cast<std::int64_t>(n);
  Rational penalty = Rational(nn) * *lo - Rational(nn - 1) * *hi - Rational(1);
  *penalty_out = penalty;
  std::vector<std::vector<Rational>> cost(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = -(a(i, j).is_finite() ? a(i, j).value() : penalty);
  return cost;
}

bool uses_bottom(const TropMatrix& a, const Permutation& pi) {
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (a(i, pi[i]).is_bottom()) return true;
  return false;
}

PermanentReport by_assignment(const TropMatrix& a) {
  PermanentReport report;
  report.strategy_used = PermanentStrategy::assignment;
  Permutation best = optimal_assignment(a);
  if (best.empty()) return report;
  report.value = permutation_weight(a, best);
  report.optimal_permutations.push_back(best);

  Rational penalty;
  auto cost = *penalized_costs(a, &penalty);
  // Second-best: best assignment avoiding one arc of the optimum, for each arc.
  for (std::size_t i = 0; i < best.size(); ++i) {
    auto forbidden = cost;
    forbidden[i][best[i]] = -penalty;
    Permutation alt = hungarian_min(forbidden);
    if (alt[i] == best[i]) continue;
    bool finite = true;
    for (std::size_t r = 0; r < alt.size(); ++r)
      if (a(r, alt[r]).is_bottom()) finite = false;
    if (finite && permutation_weight(a, alt) == report.value) {
      report.optimal_permutations.push_back(alt);
      std::sort(report.optimal_permutations.begin(), report.optimal_permutations.end());
      report.overflow = true;
      return report;
    }
  }
  report.unique = true;
  return report;
}

}  // namespace

TropScalar permutation_weight(const TropMatrix& a, const Permutation& pi) {
  TropScalar s(0);
  for (std::size_t i = 0; i < pi.size(); ++i) s += a(i, pi[i]);
  return s;
}

Permutation optimal_assignment(const TropMatrix& a) {
  require_square(a, "optimal_assignment");
  if (a.rows() == 0) return {};
  Rational penalty;
  auto cost = penalized_costs(a, &penalty);
  if (!cost) return {};
  Permutation best = hungarian_min(*cost);
  if (uses_bottom(a, best)) return {};
  return best;
}

PermanentReport permanent(const TropMatrix& a, const PermanentOptions& options) {
  require_square(a, "permanent");
  switch (options.strategy) {
    case PermanentStrategy::exhaustive:
      if (a.rows() > options.exhaustive_limit) {
        throw std::invalid_argument("permanent: n=" + std::to_string(a.rows()) +
                                    " exceeds exhaustive cap " +
                                    std::to_string(options.exhaustive_limit));
      }
      return exhaustive(a, options.permutation_cap);
    case PermanentStrategy::assignment:
      return by_assignment(a);
    case PermanentStrategy::automatic:
      break;
  }
  if (a.rows() <= options.exhaustive_limit) return exhaustive(a, options.permutation_cap);
  return by_assignment(a);
}

bool is_nonsingular(const TropMatrix& a) { return permanent(a).unique; }

}  // namespace tropid
