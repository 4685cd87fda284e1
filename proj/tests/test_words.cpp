#include "doctest.h"
#include "oracles.hpp"
#include "tropid/random.hpp"
#include "tropid/ranks.hpp"
#include "tropid/errors.hpp"
#include "tropid/words.hpp"

using namespace tropid;

namespace {
const TropScalar ninf = kBottom;

TropMatrix rnd(Rng& rng, std::size_t n, double mass = 0.2) {
  return random_matrix(rng, n, EntryDistribution{-6, 6, mass, false});
}

// Letter-by-letter product, the definition of evaluation.
TropMatrix eval_plain(const std::string& w, const TropMatrix& a, const TropMatrix& b) {
  TropMatrix r = TropMatrix::identity(a.rows());
  for (char ch : w) r = oracle::product(r, ch == 'a' ? a : b);
  return r;
}
}  // namespace

TEST_CASE("word parsing and printing") {
  const Word w = Word::parse("a^2 b^3 a");
  CHECK(w.to_plain() == "aabbba");
  CHECK(w.to_compressed() == "a^2 b^3 a");
  CHECK(w == Word::parse("aabbba"));
  CHECK(w.length() == 6);
  CHECK(Word::parse("ab ba") == Word::parse("abba"));
  CHECK(Word::parse("a^0 b") == Word::parse("b"));
  CHECK_THROWS_AS(Word::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("abc"), std::invalid_argument);
  CHECK(Word::parse("ab").power(3).to_plain() == "ababab");
  CHECK((Word::parse("ab") + Word::parse("ba")).runs().size() == 3);
  CHECK(Word::letter(Letter::b, 70).to_string() == "b^70");
}

TEST_CASE("occurrences and substitute examples") {
  CHECK(occurrences(Word::parse("abba"), Letter::a) == 2);
  CHECK(occurrences(Word::parse("a^5"), Letter::b) == 0);
  CHECK(substitute(Word::parse("ab"), Word::parse("aa"), Word::parse("ba")) == Word::parse("aaba"));
  CHECK(substitute(Word::parse("abba"), Word::parse("b"), Word::parse("a")) == Word::parse("baab"));
  const Word big = substitute(Word::parse("a^1000000"), Word::parse("ab"), Word::parse("b"));
  CHECK(big.length() == 2000000);
  CHECK(big.count(Letter::b) == 1000000);
}

TEST_CASE("evaluate examples") {
  const TropMatrix a{{0, 1}, {ninf, 0}};
  const TropMatrix b{{0, ninf}, {2, 0}};
  CHECK(evaluate(Word::parse("a"), a, b) == a);
  CHECK(evaluate(Word::parse("ab"), a, b) == TropMatrix{{3, 1}, {2, 0}});
  for (std::uint64_t t = 1; t < 9; ++t) CHECK(evaluate(Word::letter(Letter::a, t), a, b) == mat_pow(a, t));
}

TEST_CASE("evaluation: run powers, walk DP and plain products agree") {
  Rng rng(51);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 4;
    const TropMatrix a = rnd(rng, n, 0.3);
    const TropMatrix b = rnd(rng, n, 0.3);
    const Word w = random_word(rng, 1, 14);
    const TropMatrix expected = eval_plain(w.to_plain(), a, b);
    CHECK(evaluate(w, a, b) == expected);
    CHECK(evaluate_by_walks(w, LWDigraph::from_pair(a, b)) == expected);
  }
}

TEST_CASE("evaluation invariants") {
  Rng rng(52);
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 1 + k % 4;
    const TropMatrix a = rnd(rng, n);
    const TropMatrix b = rnd(rng, n);
    const Word w = random_word(rng, 1, 10);
    const Word u = random_word(rng, 1, 5);
    const Word v = random_word(rng, 1, 5);
    // substitution is a homomorphism
    CHECK(evaluate(substitute(w, u, v), a, b) == evaluate(w, evaluate(u, a, b), evaluate(v, a, b)));
    // evaluation on equal letters is a power
    CHECK(evaluate(w, a, a) == mat_pow(a, w.length()));
    // scalar shifts factor out by letter counts
    const Rational alpha(k % 5 - 2);
    const Rational beta(Rational(k % 3) - Rational(1, 2));
    const Rational shift = alpha * Rational(static_cast<std::int64_t>(w.count(Letter::a))) +
                           beta * Rational(static_cast<std::int64_t>(w.count(Letter::b)));
    CHECK(evaluate(w, add_scalar(a, alpha), add_scalar(b, beta)) == add_scalar(evaluate(w, a, b), shift));
  }
}

TEST_CASE("word terms flatten and evaluate like their flat words") {
  Rng rng(53);
  for (int k = 0; k < 100; ++k) {
    const auto x = WordTerm::leaf(random_word(rng, 1, 4));
    const auto y = WordTerm::leaf(random_word(rng, 1, 4));
    const auto mid = WordTerm::compose(random_word(rng, 1, 4), x, y);
    const auto top = WordTerm::compose(random_word(rng, 1, 5), mid, x);
    const Word flat = top->flatten();
    CHECK(flat == substitute(top->outer, mid->flatten(), x->flatten()));
    CHECK(top->length() == flat.length());
    CHECK(top->count(Letter::a) == flat.count(Letter::a));
    const TropMatrix a = rnd(rng, 3);
    const TropMatrix b = rnd(rng, 3);
    CHECK(evaluate(*top, a, b) == evaluate(flat, a, b));
  }
}

TEST_CASE("factorization through A = PQ") {
  Rng rng(54);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 3;
    const std::size_t m = 1 + (k / 3) % 3;
    const TropMatrix p = random_matrix(rng, n, m, EntryDistribution{-5, 5, 0.1, false});
    const TropMatrix q = random_matrix(rng, m, n, EntryDistribution{-5, 5, 0.1, false});
    const TropMatrix a = mat_mul(p, q);
    const TropMatrix b = rnd(rng, n);
    const TropMatrix c = rnd(rng, n);
    const Word w = random_word(rng, 1, 8);
    // w<AB, AC> A = P w<QBP, QCP> Q
    CHECK(mat_mul(evaluate(w, mat_mul(a, b), mat_mul(a, c)), a) ==
          mat_mul(mat_mul(p, evaluate(w, mat_mul(mat_mul(q, b), p), mat_mul(mat_mul(q, c), p))), q));
    // B = I: (wa)<A, AC> = P w<QP, QCP> Q
    const Word wa = w + Word::letter(Letter::a);
    CHECK(evaluate(wa, a, mat_mul(a, c)) ==
          mat_mul(mat_mul(p, evaluate(w, mat_mul(q, p), mat_mul(mat_mul(q, c), p))), q));
  }
  // (wa)<AB, AC> = P w<QBP, QCP> Q does not hold in general; w = a already fails.
  const TropMatrix p{{0}, {1}};
  const TropMatrix q{{0, 0}};
  const TropMatrix a = mat_mul(p, q);
  const TropMatrix b{{0, ninf}, {ninf, 3}};
  const TropMatrix c = TropMatrix::identity(2);
  const Word w = Word::parse("a");
  const TropMatrix lhs = evaluate(w + Word::letter(Letter::a), mat_mul(a, b), mat_mul(a, c));
  const TropMatrix rhs = mat_mul(mat_mul(p, evaluate(w, mat_mul(mat_mul(q, b), p), mat_mul(mat_mul(q, c), p))), q);
  CHECK(lhs != rhs);
}

TEST_CASE("pr_condition examples") {
  const TropMatrix i2 = TropMatrix::identity(2);
  CHECK(pr_condition(i2, i2, Word::parse("ab")).holds());
  const auto d = pr_condition(TropMatrix{{1, 2}, {3, 4}}, i2, Word::parse("ab"));
  CHECK_FALSE(d.holds());
  CHECK(d.per_a_is_trace);
  CHECK_FALSE(d.product_full_rank);
}

TEST_CASE("diagonal formula under PR") {
  const TropMatrix i3 = TropMatrix::identity(3);
  CHECK(diagonal_formula_check(i3, i3, Word::parse("abab")));
  Rng rng(55);
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 2 + k % 3;
    const Word w = random_word(rng, 1, 8);
    const auto [a, b] = random_pr_pair(rng, n, w, EntryDistribution{-6, 2, 0.2, false});
    REQUIRE(pr_condition(a, b, w).holds());
    CHECK(diagonal_formula_check(a, b, w));
    // the diagonal of w<A,B> is attained by the loops alone
    const TropMatrix e = evaluate(w, a, b);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(e(i, i) == a(i, i).times(static_cast<std::int64_t>(w.count(Letter::a))) +
                           b(i, i).times(static_cast<std::int64_t>(w.count(Letter::b))));
  }
}

TEST_CASE("diagonal formula needs PR") {
  // per(A) > tr(A): the off-diagonal 2-cycle beats the loops
  const TropMatrix a{{0, 5}, {5, 0}};
  const TropMatrix b = TropMatrix::identity(2);
  const Word w = Word::parse("aa");
  CHECK_THROWS_AS(diagonal_formula_check(a, b, w), PreconditionError);
  CHECK(evaluate(w, a, b)(0, 0) == TropScalar(10));
}

TEST_CASE("one_cyclic_optimum") {
  const TropMatrix a{{3}};
  const TropMatrix b{{-1}};
  CHECK(one_cyclic_optimum(Word::parse("aab"), a, b, 0, 0) == TropScalar(5));
  CHECK(one_cyclic_optimum(Word::parse("ab"), TropMatrix{{ninf}}, b, 0, 0).is_bottom());
  Rng rng(56);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 3;
    const Word w = random_word(rng, 1, 8);
    const auto [pa, pb] = random_pr_pair(rng, n, w, EntryDistribution{-6, 2, 0.2, false});
    const TropMatrix e = evaluate(w, pa, pb);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(one_cyclic_optimum(w, pa, pb, i, j) == e(i, j));
  }
}

TEST_CASE("perm_trace_power_check") {
  CHECK(perm_trace_power_check(TropMatrix::identity(3)));
  CHECK(perm_trace_power_check(TropMatrix::filled(3, 3, TropScalar(0))));
  Rng rng(57);
  for (int k = 0; k < 200; ++k) CHECK(perm_trace_power_check(rnd(rng, 1 + k % 4, 0.3)));
}

TEST_CASE("identities of U_n hold on full-rank PR pairs of M_n") {
  const Word u = Word::parse("abbaababba");
  const Word v = Word::parse("abbabaabba");
  Rng rng(58);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const auto [a, b] = random_pr_pair(rng, 2, u, EntryDistribution{-6, 2, 0.0, false});
    const TropMatrix eu = evaluate(u, a, b);
    const TropMatrix ev = evaluate(v, a, b);
    if (tropical_rank(ev).value != 2) continue;
    CHECK(eu == ev);
    ++checked;
  }
  CHECK(checked > 50);
}
