#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace rmst {

using VertexId = int;
using EdgeId = int;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected multigraph. Edge identity is the position in the edge list;
// parallel edges are allowed, self-loops are not.
class Graph {
 public:
  Graph() = default;
  Graph(int num_vertices, std::vector<Edge> edges);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }

  bool is_connected() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
};

// Set of edge indices drawn from a universe of size m.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(int universe) : member_(static_cast<size_t>(universe), 0) {}
  EdgeSet(int universe, std::span<const EdgeId> members);
  EdgeSet(int universe, std::initializer_list<EdgeId> members)
      : EdgeSet(universe, std::span<const EdgeId>(members.begin(), members.size())) {}

  static EdgeSet All(int universe);

  int universe() const { return static_cast<int>(member_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(EdgeId e) const {
    return e >= 0 && e < universe() && member_[static_cast<size_t>(e)] != 0;
  }

  void insert(EdgeId e);
  void erase(EdgeId e);

  // Ascending edge indices.
  std::vector<EdgeId> indices() const;

  friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

 private:
  std::vector<char> member_;
  int size_ = 0;
};

// Union-find with union by size and path halving.
class DisjointSets {
 public:
  explicit DisjointSets(int n);

  int find(int x);
  // Returns false when x and y were already joined.
  bool unite(int x, int y);
  int num_sets() const { return num_sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int num_sets_;
};

struct Components {
  int count = 0;
  // Component ids are numbered by first occurrence in vertex order.
  std::vector<int> labels;
};

Components connected_components(const Graph& graph, const EdgeSet& active);

bool is_spanning_tree(const Graph& graph, const EdgeSet& tree);

// Minimum spanning tree. Ties are broken by ascending edge index.
// Throws kDisconnectedGraph.
EdgeSet kruskal_mst(const Graph& graph, std::span<const double> costs);

// Extends `base` (which must be a forest) to a spanning tree using the
// cheapest edges from `candidates` (all edges when null). Returns only the
// added edges. Throws kDisconnectedGraph when no completion exists.
EdgeSet kruskal_complete(const Graph& graph, std::span<const double> costs,
                         const EdgeSet& base, const EdgeSet* candidates = nullptr);

// Minimum-cost spanning forest of the subgraph restricted to `subset`.
EdgeSet kruskal_forest(const Graph& graph, std::span<const double> costs,
                       const EdgeSet& subset);

// Visits every spanning tree exactly once, in lexicographic order of the
// sorted edge-index sets. The visitor may return false to stop early.
// Throws kTooManyTrees once more than `limit` trees have been produced and
// kDisconnectedGraph when the graph has no spanning tree.
void for_each_spanning_tree(const Graph& graph, std::int64_t limit,
                            const std::function<bool(const EdgeSet&)>& visit);

std::vector<EdgeSet> enumerate_spanning_trees(const Graph& graph, std::int64_t limit);

struct MinCut {
  double value = 0.0;
  // One side of the cut; never contains vertex 0.
  std::vector<VertexId> side;
};

// Exact global minimum cut (Stoer-Wagner). Requires n >= 2 and nonnegative
// weights.
MinCut global_min_cut(const Graph& graph, std::span<const double> weights);

// Indices of edges with exactly one endpoint in `side`.
std::vector<EdgeId> cut_edges(const Graph& graph, std::span<const VertexId> side);

}  // namespace rmst
