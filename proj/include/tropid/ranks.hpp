#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tropid/matrix.hpp"

namespace tropid {

enum class RankKind { tropical, factor_exact, factor_upper, factor_lower };

std::string to_string(RankKind kind);

struct SubmatrixWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// A = left * right with left rows x k and right k x cols.
struct Factorization {
  TropMatrix left;
  TropMatrix right;
};

/// Rank-one matrix column * row (column is n x 1, row is 1 x m).
struct RankOneTerm {
  TropMatrix column;
  TropMatrix row;
};

struct RankReport {
  std::size_t value = 0;
  RankKind kind = RankKind::tropical;
  std::optional<SubmatrixWitness> submatrix;
  std::optional<Factorization> factors;
  std::vector<RankOneTerm> summands;
  /// Certified lower bound when the exact search was abandoned.
  std::optional<std::size_t> lower_bound;
  /// The matrix had bottom entries, so factor supports were branched on.
  bool support_branching = false;
};

/// Reconstruction of a rank certificate failed at a specific entry.
class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(std::size_t row, std::size_t col, const std::string& detail);
  std::size_t row;
  std::size_t col;
};

/// Largest k with a nonsingular k x k submatrix (0 for all-bottom input).
/// Exhaustive; requires min(rows, cols) <= 7.
RankReport tropical_rank(const TropMatrix& a);

struct FactorRankOptions {
  std::size_t cap = 16;
  /// Abandon the exact search above this many entries.
  std::size_t max_entries = 16;
};

/// Smallest k <= cap with A = B * C. Above the entry budget, returns a
/// factor_upper report carrying the tropical rank as lower_bound.
RankReport factor_rank_exact(const TropMatrix& a, const FactorRankOptions& options = {});

/// Checks that the join of col_i * row_i equals target exactly; value is the
/// number of terms. Throws ReconstructionError naming the first bad entry.
RankReport rank_one_sum_bound(const std::vector<RankOneTerm>& terms, const TropMatrix& target);

/// Re-validates whichever certificate the report carries.
bool certificate_valid(const RankReport& report, const TropMatrix& a);

}  // namespace tropid
