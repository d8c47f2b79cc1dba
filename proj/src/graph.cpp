#include "rmst/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "rmst/error.hpp"

namespace rmst {

Graph::Graph(int num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 1) {
    throw Error(ErrorCode::kInvalidGraph, "graph needs at least one vertex");
  }
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u < 0 || e.v < 0 || e.u >= num_vertices_ || e.v >= num_vertices_) {
      throw Error(ErrorCode::kInvalidGraph,
                  "edge " + std::to_string(i) + " has an endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kInvalidGraph,
                  "edge " + std::to_string(i) + " is a self-loop");
    }
  }
}

bool Graph::is_connected() const {
  return connected_components(*this, EdgeSet::All(num_edges())).count == 1;
}

EdgeSet::EdgeSet(int universe, std::span<const EdgeId> members) : EdgeSet(universe) {
  for (EdgeId e : members) insert(e);
}

EdgeSet EdgeSet::All(int universe) {
  EdgeSet s(universe);
  std::fill(s.member_.begin(), s.member_.end(), 1);
  s.size_ = universe;
  return s;
}

void EdgeSet::insert(EdgeId e) {
  if (e < 0 || e >= universe()) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge index " + std::to_string(e) + " out of range");
  }
  char& slot = member_[static_cast<size_t>(e)];
  if (!slot) {
    slot = 1;
    ++size_;
  }
}

void EdgeSet::erase(EdgeId e) {
  if (!contains(e)) return;
  member_[static_cast<size_t>(e)] = 0;
  --size_;
}

std::vector<EdgeId> EdgeSet::indices() const {
  std::vector<EdgeId> out;
  out.reserve(static_cast<size_t>(size_));
  for (int e = 0; e < universe(); ++e) {
    if (member_[static_cast<size_t>(e)]) out.push_back(e);
  }
  return out;
}

DisjointSets::DisjointSets(int n)
    : parent_(static_cast<size_t>(n)), size_(static_cast<size_t>(n), 1), num_sets_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int x, int y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --num_sets_;
  return true;
}

Components connected_components(const Graph& graph, const EdgeSet& active) {
  const int n = graph.num_vertices();
  DisjointSets sets(n);
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (active.contains(e)) sets.unite(graph.edge(e).u, graph.edge(e).v);
  }
  Components out;
  out.labels.assign(static_cast<size_t>(n), -1);
  std::vector<int> root_label(static_cast<size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int root = sets.find(v);
    if (root_label[root] < 0) root_label[root] = out.count++;
    out.labels[v] = root_label[root];
  }
  return out;
}

bool is_spanning_tree(const Graph& graph, const EdgeSet& tree) {
  if (tree.universe() != graph.num_edges()) return false;
  if (tree.size() != graph.num_vertices() - 1) return false;
  return connected_components(graph, tree).count == 1;
}

namespace {

std::vector<EdgeId> sorted_by_cost(std::span<const double> costs, const EdgeSet* subset) {
  std::vector<EdgeId> order;
  order.reserve(costs.size());
  for (EdgeId e = 0; e < static_cast<EdgeId>(costs.size()); ++e) {
    if (subset == nullptr || subset->contains(e)) order.push_back(e);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](EdgeId a, EdgeId b) { return costs[a] < costs[b]; });
  return order;
}

void check_costs(const Graph& graph, std::span<const double> costs) {
  if (static_cast<int>(costs.size()) != graph.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "cost vector length does not match edge count");
  }
}

}  // namespace

EdgeSet kruskal_mst(const Graph& graph, std::span<const double> costs) {
  return kruskal_complete(graph, costs, EdgeSet(graph.num_edges()));
}

EdgeSet kruskal_complete(const Graph& graph, std::span<const double> costs,
                         const EdgeSet& base, const EdgeSet* candidates) {
  check_costs(graph, costs);
  DisjointSets sets(graph.num_vertices());
  for (EdgeId e : base.indices()) {
    if (!sets.unite(graph.edge(e).u, graph.edge(e).v)) {
      throw Error(ErrorCode::kInvalidArgument, "base edge set contains a cycle");
    }
  }
  EdgeSet added(graph.num_edges());
  for (EdgeId e : sorted_by_cost(costs, candidates)) {
    if (sets.num_sets() == 1) break;
    if (sets.unite(graph.edge(e).u, graph.edge(e).v)) added.insert(e);
  }
  if (sets.num_sets() != 1) {
    throw Error(ErrorCode::kDisconnectedGraph, "no spanning tree exists");
  }
  return added;
}

EdgeSet kruskal_forest(const Graph& graph, std::span<const double> costs,
                       const EdgeSet& subset) {
  check_costs(graph, costs);
  DisjointSets sets(graph.num_vertices());
  EdgeSet forest(graph.num_edges());
  for (EdgeId e : sorted_by_cost(costs, &subset)) {
    if (sets.unite(graph.edge(e).u, graph.edge(e).v)) forest.insert(e);
  }
  return forest;
}

namespace {

// Union-find without path compression so that unions can be undone in
// LIFO order during backtracking.
class RollbackSets {
 public:
  explicit RollbackSets(int n) : parent_(static_cast<size_t>(n)), rank_(static_cast<size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    history_.push_back({y, rank_[x] == rank_[y]});
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

  void undo() {
    auto [child, bumped] = history_.back();
    history_.pop_back();
    int root = parent_[child];
    parent_[child] = child;
    if (bumped) --rank_[root];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<std::pair<int, bool>> history_;
};

class TreeEnumerator {
 public:
  TreeEnumerator(const Graph& graph, std::int64_t limit,
                 const std::function<bool(const EdgeSet&)>& visit)
      : graph_(graph),
        limit_(limit),
        visit_(visit),
        sets_(graph.num_vertices()),
        chosen_(graph.num_edges()) {}

  void run() { recurse(0); }

 private:
  // Can the chosen forest still be completed using edges >= next?
  bool completable(int next) const {
    DisjointSets probe(graph_.num_vertices());
    for (EdgeId e : chosen_.indices()) probe.unite(graph_.edge(e).u, graph_.edge(e).v);
    for (EdgeId e = next; e < graph_.num_edges(); ++e) {
      probe.unite(graph_.edge(e).u, graph_.edge(e).v);
    }
    return probe.num_sets() == 1;
  }

  bool recurse(int next) {
    if (chosen_.size() == graph_.num_vertices() - 1) {
      if (++count_ > limit_) {
        throw Error(ErrorCode::kTooManyTrees,
                    "more than " + std::to_string(limit_) + " spanning trees");
      }
      return visit_(chosen_);
    }
    if (next == graph_.num_edges()) return true;
    const Edge& edge = graph_.edge(next);
    if (sets_.unite(edge.u, edge.v)) {
      chosen_.insert(next);
      bool keep_going = recurse(next + 1);
      chosen_.erase(next);
      sets_.undo();
      if (!keep_going) return false;
    }
    if (completable(next + 1)) return recurse(next + 1);
    return true;
  }

  const Graph& graph_;
  std::int64_t limit_;
  const std::function<bool(const EdgeSet&)>& visit_;
  RollbackSets sets_;
  EdgeSet chosen_;
  std::int64_t count_ = 0;
};

}  // namespace

void for_each_spanning_tree(const Graph& graph, std::int64_t limit,
                            const std::function<bool(const EdgeSet&)>& visit) {
  if (!graph.is_connected()) {
    throw Error(ErrorCode::kDisconnectedGraph, "graph has no spanning tree");
  }
  TreeEnumerator(graph, limit, visit).run();
}

std::vector<EdgeSet> enumerate_spanning_trees(const Graph& graph, std::int64_t limit) {
  std::vector<EdgeSet> trees;
  for_each_spanning_tree(graph, limit, [&](const EdgeSet& t) {
    trees.push_back(t);
    return true;
  });
  return trees;
}

MinCut global_min_cut(const Graph& graph, std::span<const double> weights) {
  constexpr double kTol = 1e-9;
  const int n = graph.num_vertices();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "min cut needs at least two vertices");
  check_costs(graph, weights);

  std::vector<std::vector<double>> adj(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (weights[e] < -kTol) {
      throw Error(ErrorCode::kInvalidArgument, "min cut weights must be nonnegative");
    }
    const Edge& edge = graph.edge(e);
    adj[edge.u][edge.v] += weights[e];
    adj[edge.v][edge.u] += weights[e];
  }

  std::vector<std::vector<VertexId>> groups(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) groups[v] = {v};
  std::vector<VertexId> active(static_cast<size_t>(n));
  std::iota(active.begin(), active.end(), 0);

  double best = std::numeric_limits<double>::infinity();
  std::vector<VertexId> best_side;
  std::vector<double> key(static_cast<size_t>(n));
  std::vector<char> added(static_cast<size_t>(n));

  while (active.size() > 1) {
    for (VertexId v : active) {
      key[v] = 0.0;
      added[v] = 0;
    }
    VertexId prev = -1;
    VertexId last = -1;
    for (size_t step = 0; step < active.size(); ++step) {
      VertexId pick = -1;
      for (VertexId v : active) {
        if (!added[v] && (pick < 0 || key[v] > key[pick])) pick = v;
      }
      if (pick < 0) break;
      added[pick] = 1;
      prev = last;
      last = pick;
      for (VertexId v : active) {
        if (!added[v]) key[v] += adj[pick][v];
      }
    }
    if (key[last] < best - kTol) {
      best = key[last];
      best_side = groups[last];
    }
    // Merge `last` into `prev`.
    groups[prev].insert(groups[prev].end(), groups[last].begin(), groups[last].end());
    for (VertexId v : active) {
      adj[prev][v] += adj[last][v];
      adj[v][prev] = adj[prev][v];
    }
    adj[prev][prev] = 0.0;
    active.erase(std::find(active.begin(), active.end(), last));
  }

  std::sort(best_side.begin(), best_side.end());
  if (!best_side.empty() && best_side.front() == 0) {
    std::vector<VertexId> complement;
    size_t j = 0;
    for (VertexId v = 0; v < n; ++v) {
      if (j < best_side.size() && best_side[j] == v) {
        ++j;
      } else {
        complement.push_back(v);
      }
    }
    best_side = std::move(complement);
  }
  return MinCut{std::max(best, 0.0), std::move(best_side)};
}

std::vector<EdgeId> cut_edges(const Graph& graph, std::span<const VertexId> side) {
  std::vector<char> in_side(static_cast<size_t>(graph.num_vertices()), 0);
  for (VertexId v : side) in_side[v] = 1;
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < graph.num_edges(); ++e) {
    if (in_side[graph.edge(e).u] != in_side[graph.edge(e).v]) out.push_back(e);
  }
  return out;
}

}  // namespace rmst
