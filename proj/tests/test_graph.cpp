#include "doctest.h"
#include "oracles.hpp"
#include "tropid/graph.hpp"
#include "tropid/random.hpp"

using namespace tropid;

namespace {
const TropScalar ninf = kBottom;

WeightedDigraph unit_graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> arcs) {
  std::vector<Arc> out;
  for (auto [i, j] : arcs) out.push_back(Arc{i, j, Rational(0)});
  return {n, out};
}

TropMatrix rnd(Rng& rng, std::size_t n, double mass) {
  return random_matrix(rng, n, EntryDistribution{-10, 10, mass, false});
}

// Heaviest closed walk mean over lengths 1..n, from powers: max_k max_i (A^k)_ii / k.
TropScalar radius_by_powers(const TropMatrix& a) {
  TropScalar best = ninf;
  for (std::size_t k = 1; k <= a.rows(); ++k) {
    const TropMatrix p = oracle::power(a, k);
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (p(i, i).is_finite())
        best = oracle::max(best, TropScalar(p(i, i).value() / Rational(static_cast<std::int64_t>(k))));
  }
  return best;
}
}  // namespace

TEST_CASE("scc_decompose examples") {
  CHECK(scc_decompose(unit_graph(1, {{0, 0}})).size() == 1);
  const auto tri = scc_decompose(unit_graph(3, {{0, 1}, {1, 2}, {2, 0}}));
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].size() == 3);
  const auto path = scc_decompose(unit_graph(3, {{0, 1}, {1, 2}}));
  REQUIRE(path.size() == 3);
  CHECK(path[0] == std::vector<std::size_t>{0});
  CHECK(path[1] == std::vector<std::size_t>{1});
  CHECK(path[2] == std::vector<std::size_t>{2});
}

TEST_CASE("cyclicity examples") {
  CHECK(cyclicity(unit_graph(1, {{0, 0}})) == 1);
  CHECK(cyclicity(unit_graph(3, {{0, 1}, {1, 2}, {2, 0}})) == 3);
  CHECK(cyclicity(unit_graph(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}})) == 1);
  CHECK(cyclicity(unit_graph(5, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}})) == 6);
  CHECK(cyclicity(unit_graph(3, {{0, 1}, {1, 2}})) == 1);
}

TEST_CASE("simple_cycles on the complete digraph") {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) arcs.emplace_back(i, j);
  // sum over k of C(4,k) (k-1)! = 4 + 6 + 8 + 6
  const auto cycles = simple_cycles(unit_graph(4, arcs));
  CHECK(cycles.size() == 24);
  CHECK(std::is_sorted(cycles.begin(), cycles.end()));
  CHECK_THROWS_AS(simple_cycles(unit_graph(4, arcs), 10), std::length_error);
}

TEST_CASE("spectral_radius examples") {
  CHECK(spectral_radius(TropMatrix{{3}}) == TropScalar(3));
  CHECK(spectral_radius(TropMatrix{{ninf, 1}, {3, ninf}}) == TropScalar(2));
  CHECK(spectral_radius(TropMatrix{{ninf, 5}, {ninf, ninf}}).is_bottom());
  CHECK(spectral_radius(TropMatrix{{ninf, 1}, {2, ninf}}) == TropScalar(Rational(3, 2)));
}

TEST_CASE("spectral radius: cycles, Karp and powers agree") {
  Rng rng(21);
  for (int k = 0; k < 400; ++k) {
    const TropMatrix a = rnd(rng, 1 + k % 7, 0.2 + 0.1 * (k % 5));
    const TropScalar expected = radius_by_powers(a);
    CHECK(spectral_radius_by_cycles(a) == expected);
    CHECK(spectral_radius_karp(a) == expected);
  }
}

TEST_CASE("critical_graph examples") {
  const auto g = critical_graph(TropMatrix{{0, ninf}, {ninf, -1}});
  CHECK(g.arcs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  CHECK(g.nodes == std::vector<std::size_t>{0});
  const auto two = critical_graph(TropMatrix{{ninf, 1}, {3, ninf}});
  CHECK(two.arcs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}});
  CHECK(critical_graph(TropMatrix{{ninf, 5}, {ninf, ninf}}).empty());
}

TEST_CASE("critical arcs lie on cycles of maximal mean") {
  Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const TropMatrix a = rnd(rng, 2 + k % 5, 0.3);
    const TropScalar lambda = spectral_radius(a);
    const auto g = critical_graph(a);
    if (lambda.is_bottom()) {
      CHECK(g.empty());
      continue;
    }
    const std::size_t n = a.rows();
    for (auto [i, j] : g.arcs) {
      // the arc (i,j) closes a walk j -> i of length <= n-1 so that the cycle mean is lambda
      const TropMatrix scaled = add_scalar(a, Rational(0) - lambda.value());
      bool found = false;
      for (std::size_t len = 0; len < n && !found; ++len) {
        const TropScalar back = oracle::walk_max(scaled, j, i, len);
        if (back.is_finite() && (back + scaled(i, j)) == TropScalar(0)) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("kleene_star examples") {
  CHECK(kleene_star(TropMatrix(3, 3)) == TropMatrix::identity(3));
  CHECK(kleene_star(TropMatrix{{ninf, 1}, {ninf, ninf}}) == TropMatrix{{0, 1}, {ninf, 0}});
  CHECK_THROWS_AS(kleene_star(TropMatrix{{1}}), DivergenceError);
}

TEST_CASE("kleene_star is the join of powers up to n-1") {
  Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 6;
    TropMatrix a = rnd(rng, n, 0.3);
    const TropScalar lambda = spectral_radius(a);
    if (lambda.is_finite()) a = add_scalar(a, Rational(0) - lambda.value() - Rational(k % 2));
    TropMatrix expected = TropMatrix::identity(n);
    for (std::size_t p = 1; p < n; ++p) expected = mat_max(expected, oracle::power(a, p));
    CHECK(kleene_star(a) == expected);
  }
}

TEST_CASE("max_weight_walk examples") {
  const TropMatrix a{{0, 1}, {ninf, 0}};
  const auto w0 = max_weight_walk(a, 1, 1, 0);
  REQUIRE(w0);
  CHECK(w0->weight == TropScalar(0));
  CHECK(w0->length == 0);
  const auto w = max_weight_walk(a, 0, 1, 2);
  REQUIRE(w);
  CHECK(w->weight == TropScalar(1));
  CHECK(w->nodes.size() == 3);
  for (std::size_t t = 1; t < 5; ++t) CHECK_FALSE(max_weight_walk(a, 1, 0, t));
}

TEST_CASE("max_weight_walk agrees with walk enumeration and its witness is a walk") {
  Rng rng(24);
  for (int k = 0; k < 150; ++k) {
    const std::size_t n = 1 + k % 4;
    const TropMatrix a = rnd(rng, n, 0.4);
    const std::size_t t = k % 6;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const TropScalar expected = oracle::walk_max(a, i, j, t);
        const auto w = max_weight_walk(a, i, j, t);
        CHECK(w.has_value() == expected.is_finite());
        if (!w) continue;
        CHECK(w->weight == expected);
        REQUIRE(w->nodes.size() == t + 1);
        CHECK(w->nodes.front() == i);
        CHECK(w->nodes.back() == j);
        TropScalar sum(0);
        for (std::size_t s = 0; s < t; ++s) sum = sum + a(w->nodes[s], w->nodes[s + 1]);
        CHECK(sum == expected);
      }
    }
  }
}

TEST_CASE("restricted_walk_optimum examples") {
  const TropMatrix loops{{2, ninf}, {ninf, -1}};
  CHECK(restricted_walk_optimum(loops, 0, 0, 5) == TropScalar(10));
  CHECK(restricted_walk_optimum(loops, 1, 1, 3) == TropScalar(-3));
  CHECK(restricted_walk_optimum(loops, 0, 1, 3).is_bottom());
  CHECK(restricted_walk_optimum(TropMatrix{{0, 1}, {ninf, 0}}, 0, 1, 3) == TropScalar(1));
}

TEST_CASE("restricted walks never beat unrestricted ones") {
  Rng rng(25);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 4;
    const TropMatrix a = rnd(rng, n, 0.3);
    const std::size_t t = 1 + k % 7;
    const TropMatrix p = mat_pow(a, t);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(restricted_walk_optimum(a, i, j, t) <= p(i, j));
  }
}

TEST_CASE("witness_cycle examples") {
  const Permutation id{0, 1};
  const auto c = witness_cycle(TropMatrix{{0, 1}, {1, 0}}, id);
  REQUIRE(c);
  CHECK(*c == Cycle{0, 1});
  CHECK_FALSE(witness_cycle(TropMatrix::identity(2), id));
  const TropMatrix q{{0, 1}, {-1, 0}};
  const TropMatrix b = mat_mul(q, q);
  CHECK(b == q);
  const auto c2 = witness_cycle(b, id);
  REQUIRE(c2);
  CHECK(*c2 == Cycle{0, 1});
}

TEST_CASE("a tied permanent always has a witness cycle") {
  Rng rng(26);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 4;
    const TropMatrix q = rnd(rng, n, 0.2);
    const auto per = permanent(q);
    if (per.value.is_bottom()) continue;
    const Permutation& tau = per.optimal_permutations.front();
    const auto c = witness_cycle(q, tau);
    if (!per.unique) CHECK(c.has_value());
    if (!c) continue;
    // the cycle is not a cycle of tau
    bool is_tau_cycle = true;
    for (std::size_t s = 0; s < c->size(); ++s)
      if (tau[(*c)[s]] != (*c)[(s + 1) % c->size()]) is_tau_cycle = false;
    CHECK_FALSE(is_tau_cycle);
  }
}

TEST_CASE("shortest_cycle_in and to_dot") {
  const auto g = unit_graph(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 1}});
  const auto c = shortest_cycle_in(g, {0, 1, 2, 3});
  REQUIRE(c);
  CHECK(*c == Cycle{1, 3});
  CHECK_FALSE(shortest_cycle_in(unit_graph(2, {{0, 1}}), {0}));
  const std::string dot = to_dot(TropMatrix{{0, ninf}, {ninf, -1}});
  CHECK(dot.find("digraph") != std::string::npos);
}
