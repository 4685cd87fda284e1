#include "tropid/random.hpp"

#include <algorithm>
#include <string>

#include "tropid/errors.hpp"
#include "tropid/ranks.hpp"

namespace tropid {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

IntTropMatrix random_int_matrix(Rng& rng, std::size_t n, const EntryDistribution& dist) {
  std::uniform_int_distribution<std::int64_t> value(dist.lo, dist.hi);
  std::bernoulli_distribution bottom(dist.bottom_mass);
  IntTropMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool drop = bottom(rng);
      const std::int64_t x = value(rng);
      if (!drop && !(dist.upper_triangular && i > j)) out(i, j) = x;
    }
  }
  return out;
}

TropMatrix random_matrix(Rng& rng, std::size_t n, const EntryDistribution& dist) {
  return random_int_matrix(rng, n, dist).to_trop();
}

TropMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const EntryDistribution& dist) {
  std::uniform_int_distribution<std::int64_t> value(dist.lo, dist.hi);
  std::bernoulli_distribution bottom(dist.bottom_mass);
  TropMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const bool drop = bottom(rng);
      const std::int64_t x = value(rng);
      if (!drop) out(i, j) = TropScalar(x);
    }
  }
  return out;
}

namespace {

TropMatrix diagonally_dominant(Rng& rng, std::size_t n, const EntryDistribution& dist) {
  TropMatrix m = random_matrix(rng, n, dist);
  std::uniform_int_distribution<std::int64_t> margin(1, 3);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = kBottom;
  for (std::size_t i = 0; i < n; ++i) {
    TropScalar top(dist.lo);
    for (std::size_t k = 0; k < n; ++k) top = tmax(top, tmax(m(i, k), m(k, i)));
    m(i, i) = top + Rational(margin(rng));
  }
  return m;
}

}  // namespace

std::pair<TropMatrix, TropMatrix> random_pr_pair(Rng& rng, std::size_t n, const Word& w,
                                                 const EntryDistribution& off_diagonal,
                                                 std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    TropMatrix a = diagonally_dominant(rng, n, off_diagonal);
    TropMatrix b = diagonally_dominant(rng, n, off_diagonal);
    if (tropical_rank(evaluate(w, a, b)).value == n) return {std::move(a), std::move(b)};
  }
  throw BudgetExceeded("random_pr_pair: no full-rank product after " + std::to_string(max_attempts) + " draws");
}

TropMatrix random_singular_power(Rng& rng, std::size_t n, const EntryDistribution& dist, std::size_t max_attempts) {
  const std::uint64_t nbar = lcm_upto(static_cast<unsigned>(n));
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    TropMatrix a = random_matrix(rng, n, dist);
    if (tropical_rank(mat_pow_fast(a, nbar)).value < n) return a;
  }
  throw BudgetExceeded("random_singular_power: no sample after " + std::to_string(max_attempts) + " draws");
}

Word random_word(Rng& rng, std::size_t min_length, std::size_t max_length) {
  std::uniform_int_distribution<std::size_t> length(min_length, max_length);
  std::bernoulli_distribution coin(0.5);
  const std::size_t l = std::max<std::size_t>(1, length(rng));
  std::vector<Run> runs;
  for (std::size_t k = 0; k < l; ++k) runs.push_back({coin(rng) ? Letter::a : Letter::b, 1});
  return Word(std::move(runs));
}

}  // namespace tropid
