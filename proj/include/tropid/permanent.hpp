#pragma once

#include <cstddef>
#include <vector>

#include "tropid/matrix.hpp"

namespace tropid {

using Permutation = std::vector<std::size_t>;

enum class PermanentStrategy { automatic, exhaustive, assignment };

struct PermanentOptions {
  PermanentStrategy strategy = PermanentStrategy::automatic;
  /// Largest n handled by enumeration under the automatic strategy.
  std::size_t exhaustive_limit = 8;
  /// Maximum number of optimal permutations recorded.
  std::size_t permutation_cap = 16;
};

struct PermanentReport {
  TropScalar value;
  /// Optimal permutations in lexicographic order (exhaustive), or the
  /// optimum plus one tying permutation (assignment).
  std::vector<Permutation> optimal_permutations;
  /// More optimal permutations exist than were recorded.
  bool overflow = false;
  /// Exactly one permutation attains a finite value.
  bool unique = false;
  PermanentStrategy strategy_used = PermanentStrategy::exhaustive;
};

/// Sum of A_{i,pi(i)}.
TropScalar permutation_weight(const TropMatrix& a, const Permutation& pi);

PermanentReport permanent(const TropMatrix& a, const PermanentOptions& options = {});

/// Permanent finite and attained by exactly one permutation.
bool is_nonsingular(const TropMatrix& a);

/// Maximum-weight assignment over finite entries (Hungarian method on exact
/// rationals). Returns an empty permutation when every assignment uses a
/// bottom entry.
Permutation optimal_assignment(const TropMatrix& a);

}  // namespace tropid
