#include "rmst/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "rmst/error.hpp"

namespace rmst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> tree_costs(const MinMaxInstance& inst, const EdgeSet& tree) {
  std::vector<double> costs;
  costs.reserve(static_cast<size_t>(inst.num_scenarios()));
  for (const CostRow& row : inst.scenarios()) costs.push_back(tree_cost(tree, row));
  return costs;
}

template <typename Objective>
ExactResult enumerate_best(const MinMaxInstance& inst, std::int64_t limit, Objective objective) {
  ExactResult best;
  best.value = kInf;
  for_each_spanning_tree(inst.graph(), limit, [&](const EdgeSet& tree) {
    ++best.nodes_explored;
    const double v = objective(tree_costs(inst, tree));
    if (v < best.value) {
      best.value = v;
      best.tree = tree;
    }
    return true;
  });
  return best;
}

// Per-scenario edge orders sorted by cost, ties by index.
std::vector<std::vector<EdgeId>> sorted_orders(const std::vector<CostRow>& rows) {
  std::vector<std::vector<EdgeId>> orders;
  for (const CostRow& row : rows) {
    std::vector<EdgeId> order(row.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return row[a] < row[b]; });
    orders.push_back(std::move(order));
  }
  return orders;
}

}  // namespace

ExactResult brute_force_minmax(const MinMaxInstance& inst, std::int64_t tree_limit) {
  return enumerate_best(inst, tree_limit, [](const std::vector<double>& costs) {
    return *std::max_element(costs.begin(), costs.end());
  });
}

ExactResult brute_force_regret(const MinMaxInstance& inst, std::int64_t tree_limit) {
  const std::vector<double>& optima = inst.scenario_optima();
  return enumerate_best(inst, tree_limit, [&](const std::vector<double>& costs) {
    double worst = -kInf;
    for (size_t s = 0; s < costs.size(); ++s) worst = std::max(worst, costs[s] - optima[s]);
    return worst;
  });
}

namespace {

class TwoStageSearch {
 public:
  explicit TwoStageSearch(const TwoStageInstance& inst)
      : inst_(inst), g_(inst.graph()), m_(g_.num_edges()), forest_(m_) {
    orders_ = sorted_orders(inst.scenarios());
  }

  ExactTwoStageResult run() {
    best_.value = kInf;
    visit(0, 0.0);
    best_.solution = complete_first_stage(inst_, best_forest_);
    best_.value = evaluate_2stage(inst_, best_.solution);
    return best_;
  }

 private:
  // Cheapest completion of the current forest under `cost`, using edges
  // admitted by `allowed`. Returns +inf if none exists.
  template <typename Cost, typename Allowed>
  double completion(const std::vector<EdgeId>& order, Cost cost, Allowed allowed) const {
    DisjointSets sets(g_.num_vertices());
    for (EdgeId e : forest_.indices()) sets.unite(g_.edge(e).u, g_.edge(e).v);
    double total = 0.0;
    for (EdgeId e : order) {
      if (sets.num_sets() == 1) break;
      if (forest_.contains(e) || !allowed(e)) continue;
      if (sets.unite(g_.edge(e).u, g_.edge(e).v)) total += cost(e);
    }
    return sets.num_sets() == 1 ? total : kInf;
  }

  double value_of_forest(double first_cost) const {
    double worst = -kInf;
    for (int s = 0; s < inst_.num_scenarios(); ++s) {
      const CostRow& row = inst_.scenario(s);
      worst = std::max(worst, first_cost + completion(orders_[s], [&](EdgeId e) { return row[e]; },
                                                      [](EdgeId) { return true; }));
    }
    return worst;
  }

  double subtree_bound(int next, double first_cost) const {
    const CostRow& first = inst_.first_stage();
    double worst = -kInf;
    for (int s = 0; s < inst_.num_scenarios(); ++s) {
      const CostRow& row = inst_.scenario(s);
      auto cost = [&](EdgeId e) { return e >= next ? std::min(first[e], row[e]) : row[e]; };
      // The relaxed costs change the order, so sort locally.
      std::vector<EdgeId> order(static_cast<size_t>(m_));
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return cost(a) < cost(b); });
      worst = std::max(worst, first_cost + completion(order, cost, [](EdgeId) { return true; }));
    }
    return worst;
  }

  bool creates_cycle(EdgeId e) const {
    DisjointSets sets(g_.num_vertices());
    for (EdgeId f : forest_.indices()) sets.unite(g_.edge(f).u, g_.edge(f).v);
    return sets.find(g_.edge(e).u) == sets.find(g_.edge(e).v);
  }

  void visit(int next, double first_cost) {
    ++best_.nodes_explored;
    const double value = value_of_forest(first_cost);
    if (value < best_.value) {
      best_.value = value;
      best_forest_ = forest_;
    }
    if (forest_.size() == g_.num_vertices() - 1) return;
    if (subtree_bound(next, first_cost) >= best_.value) return;
    const CostRow& first = inst_.first_stage();
    for (EdgeId e = next; e < m_; ++e) {
      if (first_cost + first[e] >= best_.value) continue;
      if (creates_cycle(e)) continue;
      forest_.insert(e);
      visit(e + 1, first_cost + first[e]);
      forest_.erase(e);
    }
  }

  const TwoStageInstance& inst_;
  const Graph& g_;
  int m_;
  EdgeSet forest_;
  EdgeSet best_forest_;
  std::vector<std::vector<EdgeId>> orders_;
  ExactTwoStageResult best_;
};

}  // namespace

ExactTwoStageResult brute_force_2stage(const TwoStageInstance& inst, int max_edges) {
  if (inst.num_edges() > max_edges) {
    throw Error(ErrorCode::kInstanceTooLarge,
                std::to_string(inst.num_edges()) + " edges exceeds the limit of " +
                    std::to_string(max_edges));
  }
  if (inst.has_negative_costs()) {
    throw Error(ErrorCode::kNegativeCosts, "exact two-stage search requires nonnegative costs");
  }
  return TwoStageSearch(inst).run();
}

namespace {

class MinMaxBranchAndBound {
 public:
  MinMaxBranchAndBound(const MinMaxInstance& inst, double time_limit_s)
      : inst_(inst),
        g_(inst.graph()),
        m_(g_.num_edges()),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(time_limit_s))) {
    orders_ = sorted_orders(inst.scenarios());
  }

  ExactResult run() {
    seed_incumbent();
    Node root{EdgeSet(m_), 0, 0, 0, 0.0, EdgeSet()};
    if (bound(root)) push(std::move(root));
    while (!open_.empty()) {
      if ((result_.nodes_explored & 255) == 0 && std::chrono::steady_clock::now() > deadline_) {
        result_.optimal = false;
        break;
      }
      Node node = open_.top();
      open_.pop();
      ++result_.nodes_explored;
      if (node.lb >= result_.value) continue;
      expand(node);
    }
    return result_;
  }

 private:
  struct Node {
    EdgeSet included;
    int next = 0;  // edges below `next` that are not included are excluded
    int depth = 0;
    std::int64_t seq = 0;
    double lb = 0.0;
    EdgeSet witness;  // completion of the scenario attaining lb
  };

  struct Worse {
    bool operator()(const Node& a, const Node& b) const {
      if (a.lb != b.lb) return a.lb > b.lb;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.seq > b.seq;
    }
  };

  void seed_incumbent() {
    if (!inst_.has_negative_costs()) {
      offer(baseline_mean_scenario(inst_).tree);
      return;
    }
    std::vector<double> worst(static_cast<size_t>(m_), -kInf);
    for (const CostRow& row : inst_.scenarios()) {
      for (EdgeId e = 0; e < m_; ++e) worst[e] = std::max(worst[e], row[e]);
    }
    offer(kruskal_mst(g_, worst));
  }

  void offer(const EdgeSet& tree) {
    const double v = evaluate_minmax(inst_, tree);
    if (v < result_.value || result_.tree.universe() == 0) {
      result_.value = v;
      result_.tree = tree;
    }
  }

  // Computes node.lb and node.witness; returns false if the node has no
  // spanning tree.
  bool bound(Node& node) const {
    double lb = -kInf;
    for (int s = 0; s < inst_.num_scenarios(); ++s) {
      const CostRow& row = inst_.scenario(s);
      DisjointSets sets(g_.num_vertices());
      double total = 0.0;
      for (EdgeId e : node.included.indices()) {
        sets.unite(g_.edge(e).u, g_.edge(e).v);
        total += row[e];
      }
      EdgeSet added(m_);
      for (EdgeId e : orders_[s]) {
        if (sets.num_sets() == 1) break;
        if (e < node.next) continue;
        if (sets.unite(g_.edge(e).u, g_.edge(e).v)) {
          total += row[e];
          added.insert(e);
        }
      }
      if (sets.num_sets() != 1) return false;
      if (total > lb) {
        lb = total;
        node.witness = std::move(added);
      }
    }
    node.lb = lb;
    return true;
  }

  void push(Node node) {
    node.seq = seq_++;
    open_.push(std::move(node));
  }

  void expand(const Node& node) {
    // The witness completes the node to a spanning tree; use it as a cheap
    // primal heuristic.
    EdgeSet tree = node.included;
    for (EdgeId e : node.witness.indices()) tree.insert(e);
    offer(tree);
    if (node.included.size() == g_.num_vertices() - 1) return;

    DisjointSets sets(g_.num_vertices());
    for (EdgeId e : node.included.indices()) sets.unite(g_.edge(e).u, g_.edge(e).v);
    EdgeId branch = node.next;
    while (branch < m_ && sets.find(g_.edge(branch).u) == sets.find(g_.edge(branch).v)) ++branch;
    if (branch >= m_) return;

    Node with{node.included, branch + 1, node.depth + 1, 0, 0.0, EdgeSet()};
    with.included.insert(branch);
    if (bound(with) && with.lb < result_.value) push(std::move(with));

    Node without{node.included, branch + 1, node.depth + 1, 0, 0.0, EdgeSet()};
    if (bound(without) && without.lb < result_.value) push(std::move(without));
  }

  const MinMaxInstance& inst_;
  const Graph& g_;
  int m_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::vector<EdgeId>> orders_;
  std::priority_queue<Node, std::vector<Node>, Worse> open_;
  std::int64_t seq_ = 0;
  ExactResult result_{kInf, EdgeSet(), 0, true};
};

}  // namespace

ExactResult branch_and_bound_minmax(const MinMaxInstance& inst, double time_limit_s) {
  return MinMaxBranchAndBound(inst, time_limit_s).run();
}

BaselineResult baseline_mean_scenario(const MinMaxInstance& inst) {
  if (inst.has_negative_costs()) {
    throw Error(ErrorCode::kNegativeCosts, "the mean-scenario baseline requires nonnegative costs");
  }
  const int m = inst.num_edges();
  std::vector<double> mean(static_cast<size_t>(m), 0.0);
  for (const CostRow& row : inst.scenarios()) {
    for (EdgeId e = 0; e < m; ++e) mean[e] += row[e];
  }
  for (double& c : mean) c /= inst.num_scenarios();
  BaselineResult out;
  out.tree = kruskal_mst(inst.graph(), mean);
  out.value = evaluate_minmax(inst, out.tree);
  return out;
}

}  // namespace rmst
