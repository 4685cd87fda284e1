#include "doctest.h"
#include "oracles.hpp"
#include "tropid/random.hpp"
#include "tropid/ranks.hpp"

using namespace tropid;

namespace {
const TropScalar ninf = kBottom;
}

TEST_CASE("tropical_rank examples") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(tropical_rank(TropMatrix::identity(n)).value == n);
  CHECK(tropical_rank(TropMatrix::filled(4, 4, TropScalar(0))).value == 1);
  CHECK(tropical_rank(TropMatrix{{1, 2}, {3, 4}}).value == 1);
  CHECK(tropical_rank(TropMatrix(3, 3)).value == 0);
}

TEST_CASE("tropical_rank agrees with exhaustive submatrix search, rectangular too") {
  Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    const std::size_t r = 1 + k % 5;
    const std::size_t c = 1 + (k / 5) % 5;
    const TropMatrix a = random_matrix(rng, r, c, EntryDistribution{-4, 4, 0.1 * (k % 4), false});
    const auto rep = tropical_rank(a);
    CHECK(rep.value == oracle::tropical_rank(a));
    if (rep.value > 0) {
      REQUIRE(rep.submatrix);
      CHECK(oracle::nonsingular(a.submatrix(rep.submatrix->rows, rep.submatrix->cols)));
    }
    CHECK(certificate_valid(rep, a));
  }
}

TEST_CASE("factor_rank_exact examples") {
  const auto z = factor_rank_exact(TropMatrix(2, 3));
  CHECK(z.value == 0);
  CHECK(factor_rank_exact(TropMatrix::filled(2, 2, TropScalar(0))).value == 1);
  const auto id = factor_rank_exact(TropMatrix::identity(3));
  CHECK(id.value == 3);
  CHECK(id.kind == RankKind::factor_exact);
  CHECK(certificate_valid(id, TropMatrix::identity(3)));
}

TEST_CASE("factor rank bounds tropical rank from above, with a valid factorization") {
  Rng rng(32);
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 1 + k % 3;
    const TropMatrix a = random_matrix(rng, n, EntryDistribution{-3, 3, k % 3 == 0 ? 0.3 : 0.0, false});
    const auto fr = factor_rank_exact(a);
    CHECK(fr.kind == RankKind::factor_exact);
    CHECK(fr.value >= tropical_rank(a).value);
    CHECK(fr.value <= n);
    CHECK(certificate_valid(fr, a));
    if (fr.factors && fr.value > 0) CHECK(mat_mul(fr.factors->left, fr.factors->right) == a);
  }
}

TEST_CASE("factor rank above the entry budget reports a bracket") {
  FactorRankOptions o;
  o.max_entries = 4;
  // tropical rank 2 < 3, so the budget cut leaves a gap
  const TropMatrix a{{0, 0, 0}, {0, 1, 1}, {0, 1, 1}};
  REQUIRE(tropical_rank(a).value == 2);
  const auto rep = factor_rank_exact(a, o);
  CHECK(rep.kind == RankKind::factor_upper);
  REQUIRE(rep.lower_bound);
  CHECK(*rep.lower_bound == 2);
  CHECK(rep.value >= *rep.lower_bound);
  CHECK(certificate_valid(rep, a));
  // at the top of the range the lower bound already decides
  CHECK(factor_rank_exact(TropMatrix::identity(3), o).kind == RankKind::factor_exact);
}

TEST_CASE("rank_one_sum_bound") {
  const TropMatrix col{{0}, {1}};
  const TropMatrix row{{2, 3}};
  const TropMatrix target = mat_mul(col, row);
  CHECK(rank_one_sum_bound({{col, row}}, target).value == 1);

  const TropMatrix b{{0, 1}, {-1, 0}};
  CHECK(rank_one_sum_bound({{b.column(1), b.row_matrix(1)}}, mat_pow(b, 4)).value == 1);

  TropMatrix off = target;
  off(1, 0) = TropScalar(99);
  try {
    rank_one_sum_bound({{col, row}}, off);
    FAIL("expected ReconstructionError");
  } catch (const ReconstructionError& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 0);
  }
  const TropMatrix partial{{0}, {ninf}};
  CHECK_THROWS_AS(rank_one_sum_bound({{partial, row}}, target), ReconstructionError);
}
