#include "tropid/csr.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <array>
#include <tuple>

#include "tropid/errors.hpp"

namespace tropid {
namespace {

void require_completely_reducible(const Subgraph& h) {
  const auto g = h.digraph();
  const auto comps = scc_decompose(g);
  std::vector<std::size_t> id(h.node_count);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) id[v] = c;
  for (const auto& [i, j] : h.arcs) {
    if (id[i] != id[j]) {
      throw PreconditionError("subgraph is not completely reducible: arc (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ") joins two components");
    }
  }
}

TropMatrix join_all(const std::vector<TropMatrix>& parts, std::size_t n) {
  TropMatrix out(n, n);
  for (const auto& p : parts) out = mat_max(out, p);
  return out;
}

}  // namespace

std::uint64_t weak_csr_threshold(std::size_t n) { return static_cast<std::uint64_t>((n - 1) * (n - 1) + 1); }
std::uint64_t singular_power_threshold(std::size_t n) { return static_cast<std::uint64_t>(3 * n - 2); }

CsrTerms csr_terms(const TropMatrix& a, const Subgraph& h) {
  require_square(a, "csr_terms");
  const std::size_t n = a.rows();
  CsrTerms terms{TropMatrix(n, n), TropMatrix(n, n), TropMatrix(n, n), h, 1, kBottom};
  if (h.node_count != n) throw PreconditionError("csr_terms: subgraph node count mismatch");
  if (h.empty()) {
    terms.lambda = spectral_radius(a);
    return terms;
  }
  const CriticalGraph crit = critical_graph(a);
  for (const auto& [i, j] : h.arcs) {
    if (!crit.has_arc(i, j)) {
      throw PreconditionError("csr_terms: arc (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                              ") is not critical");
    }
  }
  require_completely_reducible(h);

  terms.lambda = spectral_radius(a);
  terms.cyc = cyclicity(h.digraph());
  const TropMatrix normalized = add_scalar(a, -terms.lambda.value());
  const TropMatrix m = kleene_star(mat_pow_fast(normalized, terms.cyc));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (h.has_node(j)) terms.c(i, j) = m(i, j);
      if (h.has_node(i)) terms.r(i, j) = m(i, j);
      if (h.has_arc(i, j)) terms.s(i, j) = a(i, j);
    }
  }
  return terms;
}

TropMatrix csr_product(const CsrTerms& terms, std::uint64_t t) {
  if (terms.subgraph.empty()) return TropMatrix(terms.c.rows(), terms.c.cols());
  return mat_mul(mat_mul(terms.c, mat_pow_fast(terms.s, t)), terms.r);
}

TropMatrix nachtigall_reduce(const TropMatrix& a) {
  require_square(a, "nachtigall_reduce");
  const CriticalGraph crit = critical_graph(a);
  TropMatrix b = a;
  for (std::size_t v : crit.nodes) {
    for (std::size_t k = 0; k < a.rows(); ++k) {
      b(v, k) = kBottom;
      b(k, v) = kBottom;
    }
  }
  return b;
}

std::optional<CsrMismatch> weak_csr_verify(const TropMatrix& a, std::uint64_t t) {
  require_square(a, "weak_csr_verify");
  const CsrTerms terms = csr_terms(a, critical_graph(a));
  const TropMatrix lhs = mat_pow(a, t);
  const TropMatrix rhs = mat_max(csr_product(terms, t), mat_pow(nachtigall_reduce(a), t));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (lhs(i, j) != rhs(i, j)) return CsrMismatch{i, j, lhs(i, j), rhs(i, j)};
  return std::nullopt;
}

FactorCertificate nested_csr_expansion(const TropMatrix& a, std::uint64_t t, bool allow_below_threshold) {
  require_square(a, "nested_csr_expansion");
  const std::size_t n = a.rows();
  if (t < weak_csr_threshold(n) && !allow_below_threshold) {
    throw PreconditionError("nested_csr_expansion: t=" + std::to_string(t) + " below (n-1)^2+1=" +
                            std::to_string(weak_csr_threshold(n)));
  }
  FactorCertificate cert;
  cert.t = t;
  TropMatrix level_matrix = a;
  for (std::size_t level = 1;; ++level) {
    const CriticalGraph crit = critical_graph(level_matrix);
    if (crit.empty()) break;
    const WeightedDigraph g = crit.digraph();
    for (const auto& comp : scc_decompose(g)) {
      auto cycle = shortest_cycle_in(g, comp);
      if (!cycle) continue;
      cert.terms.push_back(csr_terms(level_matrix, Subgraph::from_cycle(n, *cycle)));
      cert.sum_of_lengths += cycle->size();
      cert.cycles.push_back({std::move(*cycle), level});
    }
    level_matrix = nachtigall_reduce(level_matrix);
  }

  std::vector<TropMatrix> parts;
  for (const auto& term : cert.terms) parts.push_back(csr_product(term, t));
  cert.reconstruction_ok = join_all(parts, n) == mat_pow(a, t);
  if (!cert.reconstruction_ok && t >= weak_csr_threshold(n)) {
    throw FalsificationAlarm("nested CSR expansion does not reconstruct A^t at t=" + std::to_string(t) +
                             " for A=" + a.to_string());
  }
  return cert;
}

FactorCertificate minimize_certificate(const FactorCertificate& cert, const TropMatrix& a) {
  if (!cert.reconstruction_ok) throw PreconditionError("minimize_certificate: certificate does not reconstruct");
  const std::size_t n = a.rows();
  const TropMatrix target = mat_pow(a, cert.t);
  std::vector<TropMatrix> parts;
  for (const auto& term : cert.terms) parts.push_back(csr_product(term, cert.t));

  std::vector<std::size_t> order(cert.cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& cx = cert.cycles[x];
    const auto& cy = cert.cycles[y];
    return std::tuple(-static_cast<long>(cx.level), -static_cast<long>(cx.nodes.size()), cx.nodes) <
           std::tuple(-static_cast<long>(cy.level), -static_cast<long>(cy.nodes.size()), cy.nodes);
  });
  std::vector<bool> keep(parts.size(), true);
  for (std::size_t k : order) {
    keep[k] = false;
    TropMatrix rest(n, n);
    for (std::size_t m = 0; m < parts.size(); ++m)
      if (keep[m]) rest = mat_max(rest, parts[m]);
    if (rest != target) keep[k] = true;
  }

  FactorCertificate out;
  out.t = cert.t;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!keep[k]) continue;
    out.cycles.push_back(cert.cycles[k]);
    out.terms.push_back(cert.terms[k]);
    out.sum_of_lengths += cert.cycles[k].nodes.size();
  }
  out.reconstruction_ok = true;
  if (n <= 7) {
    const std::size_t rank = tropical_rank(a).value;
    if (out.sum_of_lengths > rank) {
      throw FalsificationAlarm("minimized certificate has total cycle length " + std::to_string(out.sum_of_lengths) +
                               " > rk_tr(A)=" + std::to_string(rank) + " for A=" + a.to_string());
    }
  }
  return out;
}

std::vector<RankOneTerm> certificate_rank_one_terms(const FactorCertificate& cert) {
  std::vector<RankOneTerm> out;
  for (std::size_t k = 0; k < cert.terms.size(); ++k) {
    const CsrTerms& term = cert.terms[k];
    const TropMatrix left = mat_mul(term.c, mat_pow_fast(term.s, cert.t));
    for (std::size_t node : cert.cycles[k].nodes) out.push_back({left.column(node), term.r.row_matrix(node)});
  }
  return out;
}

SingularPowerDecomposition singular_power_decomposition(const TropMatrix& a, std::uint64_t t,
                                                        bool allow_below_threshold) {
  require_square(a, "singular_power_decomposition");
  const std::size_t n = a.rows();
  if (t < singular_power_threshold(n) && !allow_below_threshold) {
    throw PreconditionError("singular_power_decomposition: t=" + std::to_string(t) + " below 3n-2=" +
                            std::to_string(singular_power_threshold(n)));
  }
  if (t < n) throw PreconditionError("singular_power_decomposition: t must be at least n");
  SingularPowerDecomposition out;
  out.nbar = lcm_upto(static_cast<unsigned>(n));
  out.t = t;
  const TropMatrix b = mat_pow(a, out.nbar);
  if (tropical_rank(b).value == n) {
    throw PreconditionError("singular_power_decomposition: A^nbar has full tropical rank");
  }

  Permutation identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  out.cycle = witness_cycle(b, identity);
  std::optional<std::size_t> c;
  if (out.cycle) {
    for (std::size_t v : *out.cycle)
      if (!c || b(v, v) < b(*c, *c) || (b(v, v) == b(*c, *c) && v < *c)) c = v;
  } else {
    for (std::size_t v = 0; v < n && !c; ++v)
      if (b(v, v).is_bottom()) c = v;
  }
  if (!c) throw FalsificationAlarm("no excluded node for singular A^nbar=" + b.to_string());
  out.excluded_node = *c;

  const TropMatrix bn = mat_pow(b, n);
  const TropMatrix btn = mat_pow(b, t - n);
  for (std::size_t h = 0; h < n; ++h)
    if (h != *c) out.terms.push_back({bn.column(h), btn.row_matrix(h)});
  out.power = mat_mul(bn, btn);
  try {
    rank_one_sum_bound(out.terms, out.power);
  } catch (const ReconstructionError& e) {
    if (t >= singular_power_threshold(n)) {
      throw FalsificationAlarm(std::string("singular power decomposition failed: ") + e.what());
    }
  }
  return out;
}

TropScalar csr_walk_value(const TropMatrix& a, const Subgraph& h, std::size_t i, std::size_t j, std::uint64_t t,
                          std::uint64_t p, const std::vector<std::size_t>& through) {
  require_square(a, "csr_walk_value");
  const std::size_t n = a.rows();
  if (spectral_radius(a) != TropScalar(0)) throw PreconditionError("csr_walk_value: lambda(A) must be 0");
  if (p == 0 || p % cyclicity(h.digraph()) != 0) throw PreconditionError("csr_walk_value: p must be a multiple of cyc(H)");
  std::vector<bool> in_set(n, false);
  for (std::size_t v : through) {
    if (!h.has_node(v)) throw PreconditionError("csr_walk_value: node outside H");
    in_set[v] = true;
  }
  const auto hg = h.digraph();
  for (const auto& comp : scc_decompose(hg)) {
    if (!shortest_cycle_in(hg, comp)) continue;
    bool hit = false;
    for (std::size_t v : comp) hit = hit || in_set[v];
    if (!hit) throw PreconditionError("csr_walk_value: node set misses a component of H");
  }

  const std::uint64_t cap = weak_csr_threshold(n) + n * p;
  // cur[v][f]: heaviest walk of the current length from i to v; f = visited the set.
  std::vector<std::array<TropScalar, 2>> cur(n), next(n);
  cur[i][in_set[i] ? 1 : 0] = TropScalar(0);
  TropScalar best;
  const std::uint64_t residue = t % p;
  for (std::uint64_t len = 0;; ++len) {
    if (len % p == residue) best = tmax(best, cur[j][1]);
    if (len == cap) break;
    for (auto& slot : next) slot = {kBottom, kBottom};
    for (std::size_t u = 0; u < n; ++u) {
      for (int f = 0; f < 2; ++f) {
        if (cur[u][f].is_bottom()) continue;
        for (std::size_t v = 0; v < n; ++v) {
          if (a(u, v).is_bottom()) continue;
          const int g = (f == 1 || in_set[v]) ? 1 : 0;
          next[v][g] = tmax(next[v][g], cur[u][f] + a(u, v));
        }
      }
    }
    std::swap(cur, next);
  }
  return best;
}

}  // namespace tropid
