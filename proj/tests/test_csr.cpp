#include "doctest.h"
#include "oracles.hpp"
#include "tropid/csr.hpp"
#include "tropid/errors.hpp"
#include "tropid/random.hpp"
#include "tropid/ranks.hpp"

using namespace tropid;

namespace {
const TropScalar ninf = kBottom;
const TropMatrix diag{{0, ninf}, {ninf, -1}};

TropMatrix rnd(Rng& rng, std::size_t n, double mass) {
  return random_matrix(rng, n, EntryDistribution{-9, 9, mass, false});
}

TropMatrix normalized(const TropMatrix& a) {
  const TropScalar lambda = spectral_radius(a);
  return lambda.is_finite() ? add_scalar(a, Rational(0) - lambda.value()) : a;
}

// One shortest cycle per strongly connected component of the critical graph.
Subgraph one_cycle_per_component(const TropMatrix& a) {
  const CriticalGraph g = critical_graph(a);
  const WeightedDigraph d = g.digraph();
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (const auto& comp : scc_decompose(d)) {
    const auto c = shortest_cycle_in(d, comp);
    if (!c) continue;
    for (std::size_t s = 0; s < c->size(); ++s) arcs.emplace_back((*c)[s], (*c)[(s + 1) % c->size()]);
  }
  return Subgraph::from_arcs(a.rows(), arcs);
}
}  // namespace

TEST_CASE("csr_terms examples") {
  const auto t = csr_terms(diag, Subgraph::from_cycle(2, Cycle{0}));
  const TropMatrix e{{0, ninf}, {ninf, ninf}};
  CHECK(t.c == e);
  CHECK(t.s == e);
  CHECK(t.r == e);
  CHECK(t.lambda == TropScalar(0));
  CHECK(t.cyc == 1);

  const TropMatrix acyclic{{ninf, 2}, {ninf, ninf}};
  const auto z = csr_terms(acyclic, critical_graph(acyclic));
  CHECK(z.c.all_bottom());
  CHECK(z.s.all_bottom());
  CHECK(z.r.all_bottom());
}

TEST_CASE("csr_terms rejects subgraphs outside the critical graph") {
  CHECK_THROWS_AS(csr_terms(diag, Subgraph::from_cycle(2, Cycle{1})), PreconditionError);
  const TropMatrix a{{0, 0}, {0, 0}};
  // a single arc of a critical 2-cycle is not completely reducible
  CHECK_THROWS_AS(csr_terms(a, Subgraph::from_arcs(2, {{0, 1}})), PreconditionError);
}

TEST_CASE("csr term support pattern") {
  Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 2 + k % 4;
    const TropMatrix a = rnd(rng, n, 0.3);
    const auto terms = csr_terms(a, critical_graph(a));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!terms.subgraph.has_node(j)) CHECK(terms.c(i, j).is_bottom());
        if (!terms.subgraph.has_node(i)) CHECK(terms.r(i, j).is_bottom());
        if (!terms.subgraph.has_arc(i, j)) CHECK(terms.s(i, j).is_bottom());
      }
    }
  }
}

TEST_CASE("nachtigall_reduce examples") {
  CHECK(nachtigall_reduce(diag) == TropMatrix{{ninf, ninf}, {ninf, -1}});
  const TropMatrix acyclic{{ninf, 2}, {ninf, ninf}};
  CHECK(nachtigall_reduce(acyclic) == acyclic);
  CHECK(nachtigall_reduce(TropMatrix{{0, 1}, {-1, 0}}).all_bottom());
}

TEST_CASE("thresholds") {
  CHECK(weak_csr_threshold(1) == 1);
  CHECK(weak_csr_threshold(4) == 10);
  CHECK(singular_power_threshold(3) == 7);
}

TEST_CASE("weak_csr_verify examples") {
  CHECK_FALSE(weak_csr_verify(diag, 2));
  CHECK_FALSE(weak_csr_verify(TropMatrix(3, 3), 4));
}

TEST_CASE("weak CSR expansion matches powers from walk enumeration") {
  Rng rng(42);
  for (int k = 0; k < 120; ++k) {
    const std::size_t n = 2 + k % 3;
    const TropMatrix a = rnd(rng, n, 0.1 * (k % 6));
    for (std::uint64_t t = weak_csr_threshold(n); t < weak_csr_threshold(n) + 4; ++t) {
      const auto terms = csr_terms(a, critical_graph(a));
      const TropMatrix expansion = mat_max(csr_product(terms, t), oracle::power(nachtigall_reduce(a), t));
      CHECK(expansion == oracle::power(a, t));
      CHECK_FALSE(weak_csr_verify(a, t));
    }
  }
}

TEST_CASE("weak CSR can fail below the threshold") {
  Rng rng(46);
  bool some_differ = false;
  for (int k = 0; k < 500 && !some_differ; ++k) {
    const TropMatrix a = rnd(rng, 4, 0.5);
    for (std::uint64_t t = 1; t < weak_csr_threshold(4); ++t) some_differ = some_differ || weak_csr_verify(a, t).has_value();
  }
  CHECK(some_differ);
}

TEST_CASE("csr_walk_value matches C S^t R and is independent of H") {
  Rng rng(43);
  int compared = 0;
  for (int k = 0; k < 80; ++k) {
    const std::size_t n = 2 + k % 3;
    const TropMatrix a = normalized(rnd(rng, n, 0.3));
    const CriticalGraph full = critical_graph(a);
    if (full.empty()) continue;
    const Subgraph thin = one_cycle_per_component(a);
    const auto t_full = csr_terms(a, full);
    const auto t_thin = csr_terms(a, thin);
    const std::uint64_t p = t_full.cyc;
    for (std::uint64_t t = 0; t < 2 * p + 2; ++t) {
      const TropMatrix m_full = csr_product(t_full, t);
      CHECK(m_full == csr_product(t_thin, t));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(csr_walk_value(a, full, i, j, t, p, full.nodes) == m_full(i, j));
          ++compared;
        }
      }
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("csr_walk_value: no walk through N gives bottom") {
  const TropMatrix a{{0, ninf}, {ninf, ninf}};
  const auto h = critical_graph(a);
  CHECK(csr_walk_value(a, h, 1, 1, 3, 1, h.nodes).is_bottom());
  CHECK(csr_walk_value(a, h, 0, 0, 3, 1, h.nodes) == TropScalar(0));
}

TEST_CASE("nested_csr_expansion and minimize_certificate examples") {
  const auto cert = nested_csr_expansion(diag, 2);
  REQUIRE(cert.cycles.size() == 2);
  CHECK(cert.cycles[0].nodes == Cycle{0});
  CHECK(cert.cycles[0].level == 1);
  CHECK(cert.cycles[1].nodes == Cycle{1});
  CHECK(cert.cycles[1].level == 2);
  CHECK(cert.reconstruction_ok);
  const auto min = minimize_certificate(cert, diag);
  CHECK(min.cycles.size() == 2);
  CHECK(min.sum_of_lengths == 2);
  CHECK(tropical_rank(diag).value == 2);

  const TropMatrix acyclic{{ninf, 1, ninf}, {ninf, ninf, 1}, {ninf, ninf, ninf}};
  const auto empty = nested_csr_expansion(acyclic, 5);
  CHECK(empty.cycles.empty());
  CHECK(empty.reconstruction_ok);
  CHECK(mat_pow(acyclic, 5).all_bottom());

  const TropMatrix loop{{1}};
  const auto single = nested_csr_expansion(loop, 3);
  CHECK(minimize_certificate(single, loop).cycles.size() == 1);
}

TEST_CASE("minimized certificates: disjoint cycles, exact, and within the tropical rank") {
  Rng rng(44);
  int dropped = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 4;
    const TropMatrix a = rnd(rng, n, 0.2 * (k % 4));
    const std::uint64_t t = weak_csr_threshold(n) + static_cast<std::uint64_t>(k % 3);
    const auto cert = nested_csr_expansion(a, t);
    CHECK(cert.reconstruction_ok);
    const auto min = minimize_certificate(cert, a);
    CHECK(min.reconstruction_ok);
    CHECK(min.sum_of_lengths <= tropical_rank(a).value);
    dropped += static_cast<int>(cert.cycles.size() - min.cycles.size());
    std::vector<int> seen(n, 0);
    for (const auto& c : min.cycles)
      for (std::size_t v : c.nodes) ++seen[v];
    for (int s : seen) CHECK(s <= 1);
    const TropMatrix power = oracle::power(a, t);
    const auto terms = certificate_rank_one_terms(min);
    CHECK(terms.size() == min.sum_of_lengths);
    if (!terms.empty()) CHECK(rank_one_sum_bound(terms, power).value == min.sum_of_lengths);
    else CHECK(power.all_bottom());
  }
  CHECK(dropped > 0);
}

TEST_CASE("singular_power_decomposition examples") {
  const auto zeros = singular_power_decomposition(TropMatrix::filled(2, 2, TropScalar(0)), 4);
  CHECK(zeros.terms.size() == 1);
  CHECK(zeros.power == TropMatrix::filled(2, 2, TropScalar(0)));

  const TropMatrix a{{0, 1}, {-1, 0}};
  const auto d = singular_power_decomposition(a, 4);
  CHECK(d.nbar == 2);
  CHECK(d.excluded_node == 0);
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].column == a.column(1));
  CHECK(d.terms[0].row == a.row_matrix(1));
  CHECK(d.power == a);

  CHECK_THROWS_AS(singular_power_decomposition(TropMatrix::identity(2), 4), PreconditionError);
  CHECK_THROWS_AS(singular_power_decomposition(a, 3), PreconditionError);
}

TEST_CASE("singular power decompositions reconstruct B^t with n-1 terms") {
  Rng rng(45);
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 2 + k % 3;
    const TropMatrix a = random_singular_power(rng, n, EntryDistribution{-5, 5, 0.2, false});
    const std::uint64_t t = singular_power_threshold(n) + static_cast<std::uint64_t>(k % 4);
    const auto d = singular_power_decomposition(a, t);
    CHECK(d.terms.size() == n - 1);
    const TropMatrix expected = oracle::power(oracle::power(a, d.nbar), t);
    CHECK(d.power == expected);
    CHECK(rank_one_sum_bound(d.terms, expected).value == n - 1);
  }
}
