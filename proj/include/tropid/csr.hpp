#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tropid/graph.hpp"
#include "tropid/matrix.hpp"
#include "tropid/ranks.hpp"

namespace tropid {

/// CSR terms of A with respect to a completely reducible subgraph H of its
/// critical graph: M = ((A - lambda)^cyc(H))*, C = columns of M on H,
/// S = A on the arcs of H, R = rows of M on H.
struct CsrTerms {
  TropMatrix c;
  TropMatrix s;
  TropMatrix r;
  Subgraph subgraph;
  std::uint64_t cyc = 1;
  TropScalar lambda;
};

/// Throws PreconditionError if H is not a completely reducible subgraph of
/// critical_graph(A). An empty H yields all-bottom terms.
CsrTerms csr_terms(const TropMatrix& a, const Subgraph& h);

/// C S^t R.
TropMatrix csr_product(const CsrTerms& terms, std::uint64_t t);

/// Nachtigall matrix B[A]: rows and columns of critical nodes set to bottom.
TropMatrix nachtigall_reduce(const TropMatrix& a);

/// (n-1)^2 + 1.
std::uint64_t weak_csr_threshold(std::size_t n);
/// 3n - 2.
std::uint64_t singular_power_threshold(std::size_t n);

struct CsrMismatch {
  std::size_t row = 0;
  std::size_t col = 0;
  TropScalar power;
  TropScalar expansion;
};

/// Compares A^t with C S^t R | B[A]^t for H = critical_graph(A). Returns the
/// first differing entry in row-major order, or nullopt when equal.
std::optional<CsrMismatch> weak_csr_verify(const TropMatrix& a, std::uint64_t t);

struct CertificateCycle {
  Cycle nodes;
  /// Reduction level, 1-based: the cycle is critical for A_level.
  std::size_t level = 1;
};

struct FactorCertificate {
  std::vector<CertificateCycle> cycles;
  /// terms[k] are the CSR terms of A_level with respect to cycles[k].
  std::vector<CsrTerms> terms;
  std::uint64_t t = 0;
  std::size_t sum_of_lengths = 0;
  bool reconstruction_ok = false;
};

/// Nested expansion A^t = join over theta of C_theta S_theta^t R_theta, one
/// shortest critical cycle per strongly connected component of each
/// critical graph along A_1 = A, A_{k+1} = B[A_k]. Throws FalsificationAlarm
/// if reconstruction fails at t >= (n-1)^2 + 1.
FactorCertificate nested_csr_expansion(const TropMatrix& a, std::uint64_t t,
                                       bool allow_below_threshold = false);

/// Greedily drops cycles (deepest level first, then longest, then
/// lexicographic) while the expansion stays exact. Throws
/// FalsificationAlarm if the surviving lengths exceed rk_tr(A).
FactorCertificate minimize_certificate(const FactorCertificate& cert, const TropMatrix& a);

/// Rank-one decomposition of a certificate: for each cycle theta and node k
/// on it, column k of C S^t times row k of R. sum_of_lengths terms in total.
std::vector<RankOneTerm> certificate_rank_one_terms(const FactorCertificate& cert);

struct SingularPowerDecomposition {
  /// (column h of B^n) * (row h of B^{t-n}) for every h != excluded_node.
  std::vector<RankOneTerm> terms;
  std::size_t excluded_node = 0;
  /// Cycle found on G(B) against the identity permutation, if any.
  std::optional<Cycle> cycle;
  std::uint64_t nbar = 1;
  std::uint64_t t = 0;
  /// B^t with B = A^nbar.
  TropMatrix power;
};

/// Rank collapse of B^t for B = A^nbar with rk_tr(B) < n and t >= 3n - 2.
/// Throws PreconditionError if B has full tropical rank.
SingularPowerDecomposition singular_power_decomposition(const TropMatrix& a, std::uint64_t t,
                                                        bool allow_below_threshold = false);

/// Heaviest walk i -> j through some node of `through` whose length is
/// congruent to t modulo p, over walks of length <= (n-1)^2 + 1 + n p.
/// Requires lambda(A) = 0, p a multiple of cyc(H), and `through` meeting
/// every strongly connected component of H.
TropScalar csr_walk_value(const TropMatrix& a, const Subgraph& h, std::size_t i, std::size_t j,
                          std::uint64_t t, std::uint64_t p, const std::vector<std::size_t>& through);

}  // namespace tropid
