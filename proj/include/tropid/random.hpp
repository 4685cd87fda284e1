#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "tropid/kernels.hpp"
#include "tropid/matrix.hpp"
#include "tropid/words.hpp"

namespace tropid {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for trial `index` of a run seeded with `seed`, so
/// results do not depend on how trials are scheduled.
Rng trial_rng(std::uint64_t seed, std::uint64_t index);

struct EntryDistribution {
  std::int64_t lo = -10;
  std::int64_t hi = 10;
  /// Probability that an entry is bottom.
  double bottom_mass = 0.0;
  /// Force entries below the diagonal to bottom (U_n samples).
  bool upper_triangular = false;
};

IntTropMatrix random_int_matrix(Rng& rng, std::size_t n, const EntryDistribution& dist);
TropMatrix random_matrix(Rng& rng, std::size_t n, const EntryDistribution& dist);
TropMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const EntryDistribution& dist);

/// Strictly diagonally dominant pair (each diagonal entry beats its row and
/// column by at least 1), rejection-sampled until rk_tr(w<A,B>) = n.
std::pair<TropMatrix, TropMatrix> random_pr_pair(Rng& rng, std::size_t n, const Word& w,
                                                 const EntryDistribution& off_diagonal,
                                                 std::size_t max_attempts = 10'000);

/// Rejection sample with rk_tr(A^nbar) < n. Throws BudgetExceeded after
/// max_attempts draws.
TropMatrix random_singular_power(Rng& rng, std::size_t n, const EntryDistribution& dist,
                                 std::size_t max_attempts = 100'000);

Word random_word(Rng& rng, std::size_t min_length, std::size_t max_length);

}  // namespace tropid
