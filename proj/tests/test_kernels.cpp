#include "doctest.h"
#include "oracles.hpp"
#include "tropid/identities.hpp"
#include "tropid/kernels.hpp"
#include "tropid/random.hpp"

using namespace tropid;

TEST_CASE("int matrices convert exactly") {
  const TropMatrix a{{0, kBottom}, {-3, 7}};
  const IntTropMatrix ia = IntTropMatrix::from_trop(a);
  CHECK(ia(0, 1) == kIntBottom);
  CHECK(ia(1, 0) == -3);
  CHECK(ia.to_trop() == a);
  CHECK(IntTropMatrix::identity(3).to_trop() == TropMatrix::identity(3));
  CHECK_THROWS_AS(IntTropMatrix::from_trop(TropMatrix{{Rational(1, 2)}}), std::invalid_argument);
}

TEST_CASE("serial and parallel products agree with the exact product") {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 40;
    const EntryDistribution d{-50, 50, 0.1 * (k % 5), false};
    const IntTropMatrix a = random_int_matrix(rng, n, d);
    const IntTropMatrix b = random_int_matrix(rng, n, d);
    const IntTropMatrix s = mul_serial(a, b);
    CHECK(mul_parallel(a, b) == s);
    if (n <= 8) CHECK(s.to_trop() == oracle::product(a.to_trop(), b.to_trop()));
  }
}

TEST_CASE("int powers and word evaluation agree with the rational path") {
  Rng rng(62);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 4;
    const EntryDistribution d{-9, 9, 0.3, k % 2 == 1};
    const IntTropMatrix a = random_int_matrix(rng, n, d);
    const IntTropMatrix b = random_int_matrix(rng, n, d);
    const std::uint64_t t = static_cast<std::uint64_t>(k % 11);
    CHECK(int_pow(a, t).to_trop() == mat_pow(a.to_trop(), t));
    const Word w = random_word(rng, 1, 30);
    CHECK(evaluate_int(w, a, b).to_trop() == evaluate(w, a.to_trop(), b.to_trop()));
  }
}

TEST_CASE("term evaluator shares subtrees across calls") {
  const TriangularTriple adjan{Word::parse("abba"), Word::parse("ab"), Word::parse("ba")};
  ConstructionOptions o;
  o.t = 2;
  o.nbar = 2;
  const Identity base(Word::parse("ab"), Word::parse("ba"));
  const Identity id = construct_identity(2, base, TriangularBase::from_triple(adjan), o);
  Rng rng(63);
  for (int k = 0; k < 20; ++k) {
    const IntTropMatrix a = random_int_matrix(rng, 3, EntryDistribution{});
    const IntTropMatrix b = random_int_matrix(rng, 3, EntryDistribution{});
    IntTermEvaluator eval(a, b);
    CHECK(eval(*id.u_term) == evaluate_int(id.u, a, b));
    CHECK(eval(*id.v_term) == evaluate_int(id.v, a, b));
    CHECK(evaluate_int(*id.u_term, a, b) == evaluate_int(id.u, a, b));
  }
}

TEST_CASE("trial streams are reproducible and distinct") {
  Rng x = trial_rng(5, 17);
  Rng y = trial_rng(5, 17);
  Rng z = trial_rng(5, 18);
  const auto vx = x();
  CHECK(vx == y());
  CHECK(vx != z());
  CHECK(splitmix64(0) != splitmix64(1));
  Rng rng(64);
  const auto u = random_int_matrix(rng, 4, EntryDistribution{-2, 2, 0.0, true});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(u(i, j) == kIntBottom);
}
