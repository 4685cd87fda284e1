#include "tropid/ranks.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "tropid/permanent.hpp"

namespace tropid {

std::string to_string(RankKind kind) {
  switch (kind) {
    case RankKind::tropical: return "tropical";
    case RankKind::factor_exact: return "factor_exact";
    case RankKind::factor_upper: return "factor_upper";
    case RankKind::factor_lower: return "factor_lower";
  }
  return "unknown";
}

ReconstructionError::ReconstructionError(std::size_t r, std::size_t c, const std::string& detail)
    : std::runtime_error("reconstruction mismatch at entry (" + std::to_string(r + 1) + "," +
                         std::to_string(c + 1) + "): " + detail),
      row(r),
      col(c) {}

namespace {

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order
// until visit returns true.
template <class Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (visit(idx)) return true;
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  auto operator<=>(const Rectangle&) const = default;
};

// Inclusion-maximal combinatorial rectangles inside the finite support.
std::vector<Rectangle> maximal_rectangles(const TropMatrix& a) {
  const std::size_t r = a.rows(), c = a.cols();
  std::set<Rectangle> found;
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < c; ++j) {
      bool all = true;
      for (std::size_t i = 0; i < r; ++i)
        if ((mask >> i & 1U) && a(i, j).is_bottom()) all = false;
      if (all) cols.push_back(j);
    }
    if (cols.empty()) continue;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r; ++i) {
      bool all = true;
      for (std::size_t j : cols)
        if (a(i, j).is_bottom()) all = false;
      if (all) rows.push_back(i);
    }
    found.insert({rows, cols});
  }
  return {found.begin(), found.end()};
}

struct Potentials {
  std::vector<Rational> row;  // b_i
  std::vector<Rational> col;  // c_j
};

// Is there b, c with b_i + c_j <= A_ij on the rectangle and equality on
// `tight`? Difference constraints x_u - x_v <= w, solved by Bellman-Ford.
std::optional<Potentials> realize(const TropMatrix& a, const Rectangle& rect,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& tight) {
  const std::size_t nr = rect.rows.size(), nc = rect.cols.size();
  const std::size_t nodes = nr + nc;
  struct Edge {
    std::size_t from, to;
    Rational w;
  };
  std::vector<Edge> edges;
  std::map<std::size_t, std::size_t> row_pos, col_pos;
  for (std::size_t p = 0; p < nr; ++p) row_pos[rect.rows[p]] = p;
  for (std::size_t q = 0; q < nc; ++q) col_pos[rect.cols[q]] = nr + q;
  // x_i = b_i, y_j = -c_j: x_i - y_j <= A_ij is edge y_j -> x_i.
  for (std::size_t p = 0; p < nr; ++p)
    for (std::size_t q = 0; q < nc; ++q) edges.push_back({nr + q, p, a(rect.rows[p], rect.cols[q]).value()});
  for (const auto& [i, j] : tight) edges.push_back({row_pos[i], col_pos[j], -a(i, j).value()});

  std::vector<Rational> dist(nodes, Rational(0));
  for (std::size_t round = 0; round <= nodes; ++round) {
    bool changed = false;
    for (const Edge& e : edges) {
      Rational cand = dist[e.from] + e.w;
      if (cand < dist[e.to]) {
        dist[e.to] = cand;
        changed = true;
      }
    }
    if (!changed) {
      Potentials pot;
      for (std::size_t p = 0; p < nr; ++p) pot.row.push_back(dist[p]);
      for (std::size_t q = 0; q < nc; ++q) pot.col.push_back(-dist[nr + q]);
      return pot;
    }
  }
  return std::nullopt;
}

}  // namespace

RankReport tropical_rank(const TropMatrix& a) {
  const std::size_t limit = std::min(a.rows(), a.cols());
  if (limit > 7) throw std::invalid_argument("tropical_rank: min(rows, cols) > 7 exceeds exhaustive cap");
  RankReport report;
  report.kind = RankKind::tropical;
  report.submatrix = SubmatrixWitness{};
  for (std::size_t k = limit; k >= 1; --k) {
    SubmatrixWitness witness;
    bool hit = for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
      return for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
        if (!permanent(a.submatrix(rows, cols)).unique) return false;
        witness = {rows, cols};
        return true;
      });
    });
    if (hit) {
      report.value = k;
      report.submatrix = witness;
      return report;
    }
  }
  return report;
}

RankReport factor_rank_exact(const TropMatrix& a, const FactorRankOptions& options) {
  RankReport report;
  report.kind = RankKind::factor_exact;
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<std::pair<std::size_t, std::size_t>> finite;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (a(i, j).is_finite()) finite.emplace_back(i, j);
  report.support_branching = finite.size() != r * c;

  if (finite.empty()) {
    report.value = 0;
    report.factors = Factorization{TropMatrix(r, 0), TropMatrix(0, c)};
    return report;
  }
  if (finite.size() > options.max_entries) {
    report.kind = RankKind::factor_upper;
    std::size_t nonbottom_cols = 0;
    for (std::size_t j = 0; j < c; ++j) {
      bool any = false;
      for (std::size_t i = 0; i < r; ++i) any = any || a(i, j).is_finite();
      nonbottom_cols += any ? 1 : 0;
    }
    report.value = std::min(nonbottom_cols, r);
    if (nonbottom_cols < r) {
      // A = A[:, J] * selector
      std::vector<std::size_t> all_rows(r);
      std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < c; ++j) {
        bool any = false;
        for (std::size_t i = 0; i < r; ++i) any = any || a(i, j).is_finite();
        if (any) cols.push_back(j);
      }
      TropMatrix select(cols.size(), c);
      for (std::size_t k = 0; k < cols.size(); ++k) select(k, cols[k]) = TropScalar(0);
      report.factors = Factorization{a.submatrix(all_rows, cols), select};
    } else {
      report.factors = Factorization{TropMatrix::identity(r), a};
    }
    if (std::min(r, c) <= 7) report.lower_bound = tropical_rank(a).value;
    return report;
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> bit_of;
  for (std::size_t k = 0; k < finite.size(); ++k) bit_of[finite[k]] = k;
  const std::size_t full = (std::size_t{1} << finite.size()) - 1;

  // Maximal realizable tight sets, each with its rectangle and potentials.
  struct Block {
    std::size_t mask;
    Rectangle rect;
    Potentials pot;
  };
  std::vector<Block> blocks;
  for (const Rectangle& rect : maximal_rectangles(a)) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i : rect.rows)
      for (std::size_t j : rect.cols) cells.emplace_back(i, j);
    const std::size_t m = cells.size();
    // Realizability is closed under subsets: a mask is tested only when all
    // of its one-smaller subsets passed.
    std::vector<char> ok(std::size_t{1} << m, 0);
    std::vector<std::optional<Potentials>> pots(std::size_t{1} << m);
    ok[0] = 1;
    for (std::size_t mask = 1; mask < ok.size(); ++mask) {
      bool candidate = true;
      for (std::size_t b = 0; b < m && candidate; ++b)
        if ((mask >> b & 1U) && !ok[mask ^ (std::size_t{1} << b)]) candidate = false;
      if (!candidate) continue;
      std::vector<std::pair<std::size_t, std::size_t>> tight;
      for (std::size_t b = 0; b < m; ++b)
        if (mask >> b & 1U) tight.push_back(cells[b]);
      pots[mask] = realize(a, rect, tight);
      ok[mask] = pots[mask].has_value();
    }
    for (std::size_t mask = 1; mask < ok.size(); ++mask) {
      if (!ok[mask]) continue;
      bool maximal = true;
      for (std::size_t b = 0; b < m && maximal; ++b)
        if (!(mask >> b & 1U) && ok[mask | (std::size_t{1} << b)]) maximal = false;
      if (!maximal) continue;
      std::size_t global = 0;
      for (std::size_t b = 0; b < m; ++b)
        if (mask >> b & 1U) global |= std::size_t{1} << bit_of[cells[b]];
      blocks.push_back({global, rect, *pots[mask]});
    }
  }

  // Minimum cover by breadth-first search over covered masks.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> depth(full + 1, kNone), via(full + 1, kNone), parent(full + 1, kNone);
  depth[0] = 0;
  std::vector<std::size_t> frontier{0};
  while (depth[full] == kNone && !frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t mask : frontier) {
      for (std::size_t k = 0; k < blocks.size(); ++k) {
        std::size_t m2 = mask | blocks[k].mask;
        if (depth[m2] != kNone) continue;
        depth[m2] = depth[mask] + 1;
        via[m2] = k;
        parent[m2] = mask;
        next.push_back(m2);
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  const std::size_t k = depth[full];
  if (k > options.cap) {
    report.kind = RankKind::factor_lower;
    report.value = options.cap + 1;
    return report;
  }

  std::vector<std::size_t> chosen;
  for (std::size_t mask = full; mask != 0; mask = parent[mask]) chosen.push_back(via[mask]);
  std::reverse(chosen.begin(), chosen.end());
  TropMatrix left(r, k), right(k, c);
  for (std::size_t l = 0; l < k; ++l) {
    const Block& blk = blocks[chosen[l]];
    for (std::size_t p = 0; p < blk.rect.rows.size(); ++p) left(blk.rect.rows[p], l) = blk.pot.row[p];
    for (std::size_t q = 0; q < blk.rect.cols.size(); ++q) right(l, blk.rect.cols[q]) = blk.pot.col[q];
  }
  report.value = k;
  report.factors = Factorization{std::move(left), std::move(right)};
  if (!certificate_valid(report, a)) throw std::logic_error("factor_rank_exact produced an invalid factorization");
  return report;
}

RankReport rank_one_sum_bound(const std::vector<RankOneTerm>& terms, const TropMatrix& target) {
  TropMatrix sum(target.rows(), target.cols());
  for (const RankOneTerm& term : terms) {
    if (term.column.cols() != 1 || term.row.rows() != 1 || term.column.rows() != target.rows() ||
        term.row.cols() != target.cols()) {
      throw ShapeError("rank_one_sum_bound: term shape does not match target");
    }
    sum = mat_max(sum, mat_mul(term.column, term.row));
  }
  for (std::size_t i = 0; i < target.rows(); ++i)
    for (std::size_t j = 0; j < target.cols(); ++j)
      if (sum(i, j) != target(i, j)) {
        throw ReconstructionError(i, j, "terms give " + sum(i, j).to_string() + ", target has " +
                                            target(i, j).to_string());
      }
  RankReport report;
  report.kind = RankKind::factor_upper;
  report.value = terms.size();
  report.summands = terms;
  return report;
}

bool certificate_valid(const RankReport& report, const TropMatrix& a) {
  if (report.submatrix && report.kind == RankKind::tropical) {
    const auto& w = *report.submatrix;
    if (w.rows.size() != report.value || w.cols.size() != report.value) return false;
    if (report.value == 0) return a.all_bottom();
    return permanent(a.submatrix(w.rows, w.cols)).unique;
  }
  if (report.factors) {
    const auto& f = *report.factors;
    if (f.left.cols() != report.value) return false;
    if (report.value == 0) return a.all_bottom();
    return mat_mul(f.left, f.right) == a;
  }
  if (!report.summands.empty()) {
    try {
      rank_one_sum_bound(report.summands, a);
      return true;
    } catch (const ReconstructionError&) {
      return false;
    }
  }
  return false;
}

}  // namespace tropid
