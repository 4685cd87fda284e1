#include "tropid/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace tropid {

WeightedDigraph::WeightedDigraph(std::size_t node_count, std::vector<Arc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)), out_(node_count) {
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) {
    return std::pair(x.from, x.to) < std::pair(y.from, y.to);
  });
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    if (arcs_[k].from >= node_count_ || arcs_[k].to >= node_count_) {
      throw std::out_of_range("arc endpoint outside node range");
    }
    out_[arcs_[k].from].push_back(k);
  }
}

WeightedDigraph WeightedDigraph::from_matrix(const TropMatrix& a) {
  require_square(a, "digraph");
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) arcs.push_back({i, j, a(i, j).value()});
  return {a.rows(), std::move(arcs)};
}

Subgraph Subgraph::from_arcs(std::size_t node_count, std::vector<std::pair<std::size_t, std::size_t>> arcs) {
  Subgraph h;
  h.node_count = node_count;
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  h.arcs = std::move(arcs);
  for (const auto& [i, j] : h.arcs) {
    h.nodes.push_back(i);
    h.nodes.push_back(j);
  }
  std::sort(h.nodes.begin(), h.nodes.end());
  h.nodes.erase(std::unique(h.nodes.begin(), h.nodes.end()), h.nodes.end());
  return h;
}

Subgraph Subgraph::from_cycle(std::size_t node_count, const Cycle& cycle) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t k = 0; k < cycle.size(); ++k) arcs.emplace_back(cycle[k], cycle[(k + 1) % cycle.size()]);
  return from_arcs(node_count, std::move(arcs));
}

bool Subgraph::has_arc(std::size_t i, std::size_t j) const {
  return std::binary_search(arcs.begin(), arcs.end(), std::pair(i, j));
}

bool Subgraph::has_node(std::size_t i) const { return std::binary_search(nodes.begin(), nodes.end(), i); }

WeightedDigraph Subgraph::digraph() const {
  std::vector<Arc> out;
  out.reserve(arcs.size());
  for (const auto& [i, j] : arcs) out.push_back({i, j, Rational(0)});
  return {node_count, std::move(out)};
}

std::vector<std::vector<std::size_t>> scc_decompose(const WeightedDigraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> connect = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t k : g.out_arcs(v)) {
      std::size_t w = g.arcs()[k].to;
      if (index[w] == kUnvisited) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      components.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == kUnvisited) connect(v);
  // Tarjan emits sinks first.
  std::reverse(components.begin(), components.end());
  return components;
}

namespace {

std::vector<std::size_t> component_ids(const std::vector<std::vector<std::size_t>>& comps, std::size_t n) {
  std::vector<std::size_t> id(n);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) id[v] = c;
  return id;
}

}  // namespace

std::uint64_t cyclicity(const WeightedDigraph& g) {
  const auto comps = scc_decompose(g);
  const auto id = component_ids(comps, g.node_count());
  std::uint64_t result = 1;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::size_t root = comps[c].front();
    std::vector<std::int64_t> depth(g.node_count(), -1);
    depth[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t k : g.out_arcs(v)) {
        std::size_t w = g.arcs()[k].to;
        if (id[w] == c && depth[w] < 0) {
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        }
      }
    }
    std::uint64_t period = 0;
    for (const Arc& arc : g.arcs()) {
      if (id[arc.from] != c || id[arc.to] != c) continue;
      std::int64_t diff = depth[arc.from] + 1 - depth[arc.to];
      period = std::gcd(period, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
    }
    if (period == 0) continue;  // no cycle in this component
    result = std::lcm(result, period);
  }
  return result;
}

std::vector<Cycle> simple_cycles(const WeightedDigraph& g, std::size_t limit) {
  const std::size_t n = g.node_count();
  std::vector<Cycle> cycles;
  std::vector<bool> on_path(n, false);
  Cycle path;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
    for (std::size_t k : g.out_arcs(v)) {
      std::size_t w = g.arcs()[k].to;
      if (w == start) {
        cycles.push_back(path);
        if (cycles.size() > limit) throw std::length_error("simple cycle enumeration limit exceeded");
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        path.push_back(w);
        dfs(start, w);
        path.pop_back();
        on_path[w] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = true;
    dfs(s, s);
    on_path[s] = false;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

TropScalar cycle_weight(const TropMatrix& a, const Cycle& cycle) {
  TropScalar w(0);
  for (std::size_t k = 0; k < cycle.size(); ++k) w += a(cycle[k], cycle[(k + 1) % cycle.size()]);
  return w;
}

TropScalar spectral_radius_by_cycles(const TropMatrix& a) {
  require_square(a, "spectral_radius");
  TropScalar best;
  for (const Cycle& c : simple_cycles(WeightedDigraph::from_matrix(a))) {
    TropScalar mean(cycle_weight(a, c).value() / Rational(static_cast<std::int64_t>(c.size())));
    best = tmax(best, mean);
  }
  return best;
}

TropScalar spectral_radius_karp(const TropMatrix& a) {
  require_square(a, "spectral_radius");
  const auto g = WeightedDigraph::from_matrix(a);
  const auto comps = scc_decompose(g);
  const auto id = component_ids(comps, g.node_count());
  TropScalar best;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& comp = comps[c];
    const std::size_t m = comp.size();
    bool has_arc = false;
    for (std::size_t u : comp)
      for (std::size_t k : g.out_arcs(u))
        if (id[g.arcs()[k].to] == c) has_arc = true;
    if (!has_arc) continue;
    // D[k][v]: heaviest walk of length k from comp[0] to v inside the component.
    std::vector<std::vector<TropScalar>> d(m + 1, std::vector<TropScalar>(g.node_count()));
    d[0][comp[0]] = TropScalar(0);
    for (std::size_t k = 1; k <= m; ++k) {
      for (std::size_t u : comp) {
        if (d[k - 1][u].is_bottom()) continue;
        for (std::size_t e : g.out_arcs(u)) {
          const Arc& arc = g.arcs()[e];
          if (id[arc.to] != c) continue;
          d[k][arc.to] = tmax(d[k][arc.to], d[k - 1][u] + TropScalar(arc.weight));
        }
      }
    }
    for (std::size_t v : comp) {
      if (d[m][v].is_bottom()) continue;
      std::optional<Rational> worst;
      for (std::size_t k = 0; k < m; ++k) {
        if (d[k][v].is_bottom()) continue;
        Rational mean = (d[m][v].value() - d[k][v].value()) / Rational(static_cast<std::int64_t>(m - k));
        if (!worst || mean < *worst) worst = mean;
      }
      if (worst) best = tmax(best, TropScalar(*worst));
    }
  }
  return best;
}

TropScalar spectral_radius(const TropMatrix& a) {
  return a.rows() <= 8 ? spectral_radius_by_cycles(a) : spectral_radius_karp(a);
}

TropMatrix kleene_star(const TropMatrix& a) {
  require_square(a, "kleene_star");
  const std::size_t n = a.rows();
  TropMatrix d = a;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, k).is_bottom()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (d(k, j).is_bottom()) continue;
        TropScalar via = d(i, k) + d(k, j);
        if (d(i, j) < via) d(i, j) = via;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, i) > TropScalar(0)) {
        throw DivergenceError("kleene_star: a cycle of positive weight through node " +
                              std::to_string(i + 1) + " (lambda > 0)");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) d(i, i) = tmax(d(i, i), TropScalar(0));
  return d;
}

CriticalGraph critical_graph(const TropMatrix& a) {
  require_square(a, "critical_graph");
  const TropScalar lambda = spectral_radius(a);
  if (lambda.is_bottom()) return Subgraph::from_arcs(a.rows(), {});
  const TropMatrix normalized = add_scalar(a, -lambda.value());
  const TropMatrix star = kleene_star(normalized);
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (normalized(i, j).is_finite() && normalized(i, j) + star(j, i) == TropScalar(0)) arcs.emplace_back(i, j);
  return Subgraph::from_arcs(a.rows(), std::move(arcs));
}

TropMatrix subgraph_matrix(const TropMatrix& a, const Subgraph& h) {
  TropMatrix m(a.rows(), a.cols());
  for (const auto& [i, j] : h.arcs) m(i, j) = a(i, j);
  return m;
}

std::optional<WalkWitness> max_weight_walk(const TropMatrix& a, std::size_t i, std::size_t j, std::size_t t) {
  require_square(a, "max_weight_walk");
  const std::size_t n = a.rows();
  std::vector<std::vector<TropScalar>> best(t + 1, std::vector<TropScalar>(n));
  std::vector<std::vector<std::size_t>> back(t + 1, std::vector<std::size_t>(n, 0));
  best[0][i] = TropScalar(0);
  for (std::size_t s = 1; s <= t; ++s) {
    for (std::size_t u = 0; u < n; ++u) {
      if (best[s - 1][u].is_bottom()) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (a(u, v).is_bottom()) continue;
        TropScalar w = best[s - 1][u] + a(u, v);
        if (best[s][v] < w) {
          best[s][v] = w;
          back[s][v] = u;
        }
      }
    }
  }
  if (best[t][j].is_bottom()) return std::nullopt;
  WalkWitness walk;
  walk.weight = best[t][j];
  walk.length = t;
  walk.nodes.resize(t + 1);
  std::size_t v = j;
  for (std::size_t s = t; s > 0; --s) {
    walk.nodes[s] = v;
    v = back[s][v];
  }
  walk.nodes[0] = v;
  return walk;
}

TropScalar restricted_walk_optimum(const TropMatrix& b, std::size_t i, std::size_t j, std::size_t t) {
  require_square(b, "restricted_walk_optimum");
  const std::size_t n = b.rows();
  if (n > 12) throw std::invalid_argument("restricted_walk_optimum: n > 12 exceeds the subset-DP cap");

  // simple[src][dst][len]: heaviest simple walk (no repeated node except a
  // closing return to src) of the given length.
  auto simple_from = [&](std::size_t src) {
    std::vector<std::vector<TropScalar>> out(n, std::vector<TropScalar>(n + 1));
    const std::size_t full = std::size_t{1} << n;
    std::vector<TropScalar> f(full * n);
    f[(std::size_t{1} << src) * n + src] = TropScalar(0);
    for (std::size_t mask = 1; mask < full; ++mask) {
      if (!(mask >> src & 1U)) continue;
      const auto len = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
      for (std::size_t v = 0; v < n; ++v) {
        const TropScalar& cur = f[mask * n + v];
        if (cur.is_bottom()) continue;
        out[v][len] = tmax(out[v][len], cur);
        for (std::size_t w = 0; w < n; ++w) {
          if (b(v, w).is_bottom()) continue;
          TropScalar nw = cur + b(v, w);
          if (w == src) {
            out[src][len + 1] = tmax(out[src][len + 1], nw);
          } else if (!(mask >> w & 1U)) {
            TropScalar& slot = f[(mask | (std::size_t{1} << w)) * n + w];
            slot = tmax(slot, nw);
          }
        }
      }
    }
    return out;
  };

  const auto from_i = simple_from(i);
  TropScalar best;
  for (std::size_t h = 0; h < n; ++h) {
    const auto from_h = simple_from(h);
    for (std::size_t l1 = 0; l1 <= n && l1 <= t; ++l1) {
      if (from_i[h][l1].is_bottom()) continue;
      for (std::size_t l2 = 0; l2 <= n && l1 + l2 <= t; ++l2) {
        if (from_h[j][l2].is_bottom()) continue;
        const std::size_t loops = t - l1 - l2;
        if (loops > 0 && b(h, h).is_bottom()) continue;
        TropScalar w = from_i[h][l1] + b(h, h).times(static_cast<std::int64_t>(loops)) + from_h[j][l2];
        best = tmax(best, w);
      }
    }
  }
  return best;
}

std::optional<Cycle> witness_cycle(const TropMatrix& q, const Permutation& tau) {
  require_square(q, "witness_cycle");
  const std::size_t n = q.rows();
  if (tau.size() != n) throw std::invalid_argument("witness_cycle: permutation size mismatch");
  // Mean weight of tau's cycle through each node.
  std::vector<TropScalar> mu(n);
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t v = s; !seen[v]; v = tau[v]) {
      seen[v] = true;
      orbit.push_back(v);
    }
    TropScalar w(0);
    for (std::size_t v : orbit) w += q(v, tau[v]);
    TropScalar mean = w.is_bottom() ? kBottom
                                    : TropScalar(w.value() / Rational(static_cast<std::int64_t>(orbit.size())));
    for (std::size_t v : orbit) mu[v] = mean;
  }
  for (const Cycle& c : simple_cycles(WeightedDigraph::from_matrix(q))) {
    bool is_tau_cycle = true;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (tau[c[k]] != c[(k + 1) % c.size()]) is_tau_cycle = false;
    if (is_tau_cycle) continue;
    TropScalar bound(0);
    for (std::size_t v : c) bound += mu[v];
    if (cycle_weight(q, c) >= bound) return c;
  }
  return std::nullopt;
}

std::optional<Cycle> shortest_cycle_in(const WeightedDigraph& g, const std::vector<std::size_t>& component) {
  const std::size_t n = g.node_count();
  std::vector<bool> inside(n, false);
  for (std::size_t v : component) inside[v] = true;

  // Reverse BFS distances to `target` through nodes >= floor inside the component.
  auto dist_to = [&](std::size_t target, std::size_t floor) {
    std::vector<std::size_t> dist(n, n + 1);
    dist[target] = 0;
    std::deque<std::size_t> queue{target};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (const Arc& arc : g.arcs()) {
        if (arc.to != v || !inside[arc.from] || arc.from < floor) continue;
        if (dist[arc.from] > dist[v] + 1) {
          dist[arc.from] = dist[v] + 1;
          queue.push_back(arc.from);
        }
      }
    }
    return dist;
  };

  std::size_t shortest = n + 1;
  for (std::size_t s : component) {
    auto dist = dist_to(s, 0);
    for (std::size_t k : g.out_arcs(s))
      if (inside[g.arcs()[k].to]) shortest = std::min(shortest, dist[g.arcs()[k].to] + 1);
  }
  if (shortest > n) return std::nullopt;

  for (std::size_t s : component) {
    auto dist = dist_to(s, s);
    Cycle path{s};
    std::vector<bool> on_path(n, false);
    on_path[s] = true;
    std::optional<Cycle> found;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      if (found) return;
      for (std::size_t k : g.out_arcs(v)) {
        std::size_t w = g.arcs()[k].to;
        if (!inside[w]) continue;
        if (w == s) {
          if (path.size() == shortest) {
            found = path;
            return;
          }
          continue;
        }
        if (w < s || on_path[w] || path.size() + dist[w] > shortest) continue;
        on_path[w] = true;
        path.push_back(w);
        dfs(w);
        path.pop_back();
        on_path[w] = false;
        if (found) return;
      }
    };
    dfs(s);
    if (found) return found;
  }
  return std::nullopt;
}

std::string to_dot(const TropMatrix& a) {
  const auto crit = critical_graph(a);
  std::ostringstream out;
  out << "digraph G {\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out << "  n" << i + 1 << " [label=\"" << i + 1 << "\"" << (crit.has_node(i) ? ", penwidth=2" : "")
        << "];\n";
  }
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).is_finite()) {
        out << "  n" << i + 1 << " -> n" << j + 1 << " [label=\"" << a(i, j).to_string() << "\""
            << (crit.has_arc(i, j) ? ", style=bold" : "") << "];\n";
      }
  out << "}\n";
  return out.str();
}

}  // namespace tropid
