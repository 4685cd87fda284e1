#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tropid/matrix.hpp"
#include "tropid/permanent.hpp"

namespace tropid {

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Rational weight;
};

/// Digraph G(A): one arc per finite entry of a square matrix.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(std::size_t node_count, std::vector<Arc> arcs);
  static WeightedDigraph from_matrix(const TropMatrix& a);

  [[nodiscard]] std::size_t node_count() const { return node_count_; }
  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  /// Arc indices leaving `node`, ordered by target.
  [[nodiscard]] const std::vector<std::size_t>& out_arcs(std::size_t node) const { return out_[node]; }

 private:
  std::size_t node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Simple cycle as a node sequence, rotated to start at its smallest node;
/// the closing return to the first node is implicit.
using Cycle = std::vector<std::size_t>;

/// Arc-subgraph of G(A) over the full node set, e.g. the critical graph.
struct Subgraph {
  std::size_t node_count = 0;
  /// Sorted (from, to) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  /// Sorted nodes incident to at least one arc.
  std::vector<std::size_t> nodes;

  static Subgraph from_arcs(std::size_t node_count, std::vector<std::pair<std::size_t, std::size_t>> arcs);
  static Subgraph from_cycle(std::size_t node_count, const Cycle& cycle);
  [[nodiscard]] bool empty() const { return arcs.empty(); }
  [[nodiscard]] bool has_arc(std::size_t i, std::size_t j) const;
  [[nodiscard]] bool has_node(std::size_t i) const;
  /// Unit-weight digraph with the same arcs.
  [[nodiscard]] WeightedDigraph digraph() const;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

using CriticalGraph = Subgraph;

struct WalkWitness {
  std::vector<std::size_t> nodes;
  TropScalar weight;
  std::size_t length = 0;
};

/// Raised by kleene_star when lambda(A) > 0.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Strongly connected components, sources first.
std::vector<std::vector<std::size_t>> scc_decompose(const WeightedDigraph& g);

/// gcd of cycle lengths per component, lcm over components; 1 if acyclic.
std::uint64_t cyclicity(const WeightedDigraph& g);

/// All simple cycles in lexicographic order of their node sequences.
/// Throws std::length_error if more than `limit` cycles exist.
std::vector<Cycle> simple_cycles(const WeightedDigraph& g, std::size_t limit = 5'000'000);

TropScalar cycle_weight(const TropMatrix& a, const Cycle& cycle);

/// Maximum cycle mean, bottom when G(A) is acyclic. Enumerates cycles for
/// n <= 8 and runs Karp's scheme otherwise.
TropScalar spectral_radius(const TropMatrix& a);
TropScalar spectral_radius_by_cycles(const TropMatrix& a);
TropScalar spectral_radius_karp(const TropMatrix& a);

/// Union of all cycles of maximal mean; empty when acyclic.
CriticalGraph critical_graph(const TropMatrix& a);

/// Matrix of a subgraph: entries of A on its arcs, bottom elsewhere.
TropMatrix subgraph_matrix(const TropMatrix& a, const Subgraph& h);

/// Supremum of all powers A^k, k >= 0. Throws DivergenceError if lambda(A) > 0.
TropMatrix kleene_star(const TropMatrix& a);

/// Heaviest walk of length exactly t from i to j, or nullopt when
/// (A^t)_ij is bottom. Ties resolve to the smallest predecessor.
std::optional<WalkWitness> max_weight_walk(const TropMatrix& a, std::size_t i, std::size_t j,
                                           std::size_t t);

/// Best weight of a length-t walk i -> j of the form
/// (simple walk) . (loop at h)^s . (simple walk). Requires n <= 12.
TropScalar restricted_walk_optimum(const TropMatrix& b, std::size_t i, std::size_t j, std::size_t t);

/// A simple cycle of G(Q) that is not a cycle of tau and weighs at least the
/// sum of tau's cycle means over its nodes; lexicographically smallest such.
std::optional<Cycle> witness_cycle(const TropMatrix& q, const Permutation& tau);

/// Shortest simple cycles inside a strongly connected node set, smallest
/// lexicographic node sequence among them.
std::optional<Cycle> shortest_cycle_in(const WeightedDigraph& g, const std::vector<std::size_t>& component);

/// Graphviz dump of G(A), critical arcs in bold.
std::string to_dot(const TropMatrix& a);

}  // namespace tropid
