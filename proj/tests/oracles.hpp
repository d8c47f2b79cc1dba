#pragma once

// Independent reference implementations used only by tests. None of them
// call into the library algorithms they are checked against.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "rmst/graph.hpp"
#include "rmst/instance.hpp"

namespace oracle {

using rmst::Edge;
using rmst::EdgeId;
using rmst::Graph;

// Random connected multigraph-free graph: random tree plus extra distinct
// pairs.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, int extra_edges) {
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    edges.push_back({u, v});
    used.insert({u, v});
  }
  const int max_pairs = n * (n - 1) / 2;
  extra_edges = std::min(extra_edges, max_pairs - (n - 1));
  while (extra_edges > 0) {
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) continue;
    edges.push_back({a, b});
    --extra_edges;
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph(n, edges);
}

inline std::vector<double> random_int_costs(std::mt19937_64& rng, int m, int lo, int hi) {
  std::vector<double> row(static_cast<size_t>(m));
  for (double& c : row) c = std::uniform_int_distribution<int>(lo, hi)(rng);
  return row;
}

inline rmst::MinMaxInstance random_minmax(std::mt19937_64& rng, int n, int extra, int k, int lo = 0,
                                          int hi = 9) {
  Graph g = random_connected_graph(rng, n, extra);
  std::vector<rmst::CostRow> rows;
  for (int s = 0; s < k; ++s) rows.push_back(random_int_costs(rng, g.num_edges(), lo, hi));
  return rmst::MinMaxInstance(g, rows);
}

// Breadth-first component count over the active edges.
inline int bfs_components(const Graph& g, const std::vector<EdgeId>& active) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(g.num_vertices()));
  for (EdgeId e : active) {
    adj[g.edge(e).u].push_back(g.edge(e).v);
    adj[g.edge(e).v].push_back(g.edge(e).u);
  }
  std::vector<char> seen(adj.size(), 0);
  int count = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
      }
    }
  }
  return count;
}

inline bool bfs_is_tree(const Graph& g, const std::vector<EdgeId>& edges) {
  return static_cast<int>(edges.size()) == g.num_vertices() - 1 && bfs_components(g, edges) == 1;
}

// Minimum over all 2^(n-1) - 1 vertex subsets that exclude vertex 0.
inline double exhaustive_min_cut(const Graph& g, const std::vector<double>& w) {
  const int n = g.num_vertices();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
    const std::uint32_t side = mask << 1;
    double value = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const bool a = (side >> g.edge(e).u) & 1u;
      const bool b = (side >> g.edge(e).v) & 1u;
      if (a != b) value += w[e];
    }
    best = std::min(best, value);
  }
  return best;
}

inline double cut_value(const Graph& g, const std::vector<double>& w, const std::vector<int>& side) {
  std::vector<char> in(static_cast<size_t>(g.num_vertices()), 0);
  for (int v : side) in[v] = 1;
  double value = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (in[g.edge(e).u] != in[g.edge(e).v]) value += w[e];
  }
  return value;
}

// Kirchhoff: any cofactor of the Laplacian counts spanning trees.
inline std::int64_t matrix_tree_count(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 1) return 1;
  std::vector<std::vector<long double>> lap(static_cast<size_t>(n - 1),
                                            std::vector<long double>(static_cast<size_t>(n - 1), 0.0L));
  for (const Edge& e : g.edges()) {
    if (e.u > 0) lap[e.u - 1][e.u - 1] += 1;
    if (e.v > 0) lap[e.v - 1][e.v - 1] += 1;
    if (e.u > 0 && e.v > 0) {
      lap[e.u - 1][e.v - 1] -= 1;
      lap[e.v - 1][e.u - 1] -= 1;
    }
  }
  long double det = 1.0L;
  const int d = n - 1;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::fabs(lap[r][c]) > std::fabs(lap[piv][c])) piv = r;
    }
    if (std::fabs(lap[piv][c]) < 1e-12L) return 0;
    if (piv != c) {
      std::swap(lap[piv], lap[c]);
      det = -det;
    }
    det *= lap[c][c];
    for (int r = c + 1; r < d; ++r) {
      const long double f = lap[r][c] / lap[c][c];
      for (int k = c; k < d; ++k) lap[r][k] -= f * lap[c][k];
    }
  }
  return static_cast<std::int64_t>(std::llround(det));
}

// Calls fn(edge list) for every (n-1)-subset of edges that forms a spanning
// tree, checked by BFS.
template <typename Fn>
void for_each_tree_by_subsets(const Graph& g, Fn fn) {
  const int m = g.num_edges();
  const int k = g.num_vertices() - 1;
  std::vector<EdgeId> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      if (bfs_components(g, pick) == 1) fn(pick);
      return;
    }
    for (int e = start; e <= m - (k - static_cast<int>(pick.size())); ++e) {
      pick.push_back(e);
      self(self, e + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

inline double subset_minmax(const rmst::MinMaxInstance& inst) {
  double best = std::numeric_limits<double>::infinity();
  for_each_tree_by_subsets(inst.graph(), [&](const std::vector<EdgeId>& t) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : inst.scenarios()) {
      double c = 0.0;
      for (EdgeId e : t) c += row[e];
      worst = std::max(worst, c);
    }
    best = std::min(best, worst);
  });
  return best;
}

inline double subset_scenario_opt(const rmst::MinMaxInstance& inst, int s) {
  double best = std::numeric_limits<double>::infinity();
  for_each_tree_by_subsets(inst.graph(), [&](const std::vector<EdgeId>& t) {
    double c = 0.0;
    for (EdgeId e : t) c += inst.scenario(s)[e];
    best = std::min(best, c);
  });
  return best;
}

inline double subset_regret(const rmst::MinMaxInstance& inst) {
  std::vector<double> opt;
  for (int s = 0; s < inst.num_scenarios(); ++s) opt.push_back(subset_scenario_opt(inst, s));
  double best = std::numeric_limits<double>::infinity();
  for_each_tree_by_subsets(inst.graph(), [&](const std::vector<EdgeId>& t) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < inst.num_scenarios(); ++s) {
      double c = 0.0;
      for (EdgeId e : t) c += inst.scenario(s)[e];
      worst = std::max(worst, c - opt[s]);
    }
    best = std::min(best, worst);
  });
  return best;
}

// Smallest number of subsets covering {0..n-1}, by enumeration.
inline int min_set_cover(int n, const std::vector<std::vector<int>>& sets) {
  const int m = static_cast<int>(sets.size());
  int best = std::numeric_limits<int>::max();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<char> cov(static_cast<size_t>(n), 0);
    int size = 0;
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      ++size;
      for (int j : sets[i]) cov[j] = 1;
    }
    if (std::all_of(cov.begin(), cov.end(), [](char c) { return c; })) best = std::min(best, size);
  }
  return best;
}

// Small LP  min c.x  s.t. rows (a, rel, b) with rel in {-1: <=, 0: =, 1: >=},
// lo <= x <= hi, solved by enumerating every basic point.
struct DenseRow {
  std::vector<double> a;
  int rel = -1;
  double b = 0.0;
};

struct VertexEnumResult {
  bool feasible = false;
  double objective = 0.0;
};

inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    }
    if (std::fabs(a[piv][c]) < 1e-10) return false;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

inline VertexEnumResult enumerate_vertices(const std::vector<double>& cost, const std::vector<DenseRow>& rows,
                                           const std::vector<double>& lo, const std::vector<double>& hi) {
  const int n = static_cast<int>(cost.size());
  // Every row and bound as a hyperplane candidate.
  std::vector<std::pair<std::vector<double>, double>> planes;
  for (const DenseRow& r : rows) planes.push_back({r.a, r.b});
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    e[j] = 1.0;
    planes.push_back({e, lo[j]});
    planes.push_back({e, hi[j]});
  }
  auto feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j) {
      if (x[j] < lo[j] - 1e-7 || x[j] > hi[j] + 1e-7) return false;
    }
    for (const DenseRow& r : rows) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += r.a[j] * x[j];
      if (r.rel <= 0 && lhs > r.b + 1e-7) return false;
      if (r.rel >= 0 && lhs < r.b - 1e-7) return false;
    }
    return true;
  };
  VertexEnumResult best;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == n) {
      std::vector<std::vector<double>> a;
      std::vector<double> b;
      for (int i : pick) {
        a.push_back(planes[i].first);
        b.push_back(planes[i].second);
      }
      std::vector<double> x;
      if (!solve_square(a, b, x) || !feasible(x)) return;
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += cost[j] * x[j];
      if (!best.feasible || obj < best.objective) best = {true, obj};
      return;
    }
    for (int i = start; i < static_cast<int>(planes.size()); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// Series-parallel check between two terminals: repeatedly merge parallel
// edges and splice out non-terminal degree-2 vertices; succeed when a single
// terminal-terminal edge remains.
inline bool reduces_to_single_edge(int n, const std::vector<Edge>& edges, int s, int t) {
  std::multiset<std::pair<int, int>> es;
  for (const Edge& e : edges) es.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::pair<int, int>> unique(es.begin(), es.end());
    if (unique.size() != es.size()) {
      es = std::multiset<std::pair<int, int>>(unique.begin(), unique.end());
      changed = true;
    }
    std::vector<std::vector<std::pair<int, int>>> inc(static_cast<size_t>(n));
    for (const auto& e : es) {
      inc[e.first].push_back(e);
      inc[e.second].push_back(e);
    }
    for (int v = 0; v < n && !changed; ++v) {
      if (v == s || v == t || inc[v].size() != 2) continue;
      const auto e1 = inc[v][0];
      const auto e2 = inc[v][1];
      const int a = e1.first == v ? e1.second : e1.first;
      const int b = e2.first == v ? e2.second : e2.first;
      if (a == b) continue;
      es.erase(es.find(e1));
      es.erase(es.find(e2));
      es.insert({std::min(a, b), std::max(a, b)});
      changed = true;
    }
  }
  return es.size() == 1 && *es.begin() == std::make_pair(std::min(s, t), std::max(s, t));
}

// Pearson statistic against equal expected counts.
inline double chi_squared_uniform(const std::vector<std::int64_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expect = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (static_cast<double>(c) - expect) * (static_cast<double>(c) - expect) / expect;
  return stat;
}

// Upper quantile of chi-squared with `dof` degrees of freedom
// (Wilson-Hilferty), z = 3.09 for p = 0.001.
inline double chi_squared_critical(int dof, double z = 3.09) {
  const double k = dof;
  const double h = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - h + z * std::sqrt(h), 3.0);
}

}  // namespace oracle
