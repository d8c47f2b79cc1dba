#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rmst/graph.hpp"

namespace rmst {

using CostRow = std::vector<double>;

// Min-max / min-max regret instance: a connected graph and K scenario cost
// rows. Negative costs are accepted but reported by has_negative_costs().
class MinMaxInstance {
 public:
  MinMaxInstance(Graph graph, std::vector<CostRow> scenarios, std::string name = "");

  const std::string& name() const { return name_; }
  const Graph& graph() const { return graph_; }
  const std::vector<CostRow>& scenarios() const { return scenarios_; }
  const CostRow& scenario(int s) const { return scenarios_[static_cast<size_t>(s)]; }
  int num_scenarios() const { return static_cast<int>(scenarios_.size()); }
  int num_vertices() const { return graph_.num_vertices(); }
  int num_edges() const { return graph_.num_edges(); }

  bool has_negative_costs() const { return has_negative_; }
  // Largest cost over all scenarios and edges (0 for an edgeless graph).
  double max_cost() const;

  // C*(S) for every scenario, computed once on first use and shared by
  // copies of this instance.
  const std::vector<double>& scenario_optima() const;

 private:
  struct OptimaCache {
    std::once_flag once;
    std::vector<double> values;
  };

  std::string name_;
  Graph graph_;
  std::vector<CostRow> scenarios_;
  bool has_negative_ = false;
  std::shared_ptr<OptimaCache> optima_;
};

// Two-stage instance: first-stage costs plus K second-stage scenario rows.
class TwoStageInstance {
 public:
  TwoStageInstance(Graph graph, CostRow first_stage, std::vector<CostRow> scenarios,
                   std::string name = "");

  const std::string& name() const { return name_; }
  const Graph& graph() const { return graph_; }
  const CostRow& first_stage() const { return first_stage_; }
  const std::vector<CostRow>& scenarios() const { return scenarios_; }
  const CostRow& scenario(int s) const { return scenarios_[static_cast<size_t>(s)]; }
  int num_scenarios() const { return static_cast<int>(scenarios_.size()); }
  int num_vertices() const { return graph_.num_vertices(); }
  int num_edges() const { return graph_.num_edges(); }

  bool has_negative_costs() const { return has_negative_; }
  // max over first-stage and all scenario costs.
  double max_cost() const;

 private:
  std::string name_;
  Graph graph_;
  CostRow first_stage_;
  std::vector<CostRow> scenarios_;
  bool has_negative_ = false;
};

struct TwoStageSolution {
  EdgeSet first_stage;
  // One completion per scenario, indexed by scenario.
  std::vector<EdgeSet> completions;
};

double tree_cost(const EdgeSet& tree, const CostRow& costs);

// max_S c^S(T). Throws kNotASpanningTree.
double evaluate_minmax(const MinMaxInstance& inst, const EdgeSet& tree);

// C*(S): minimum spanning tree cost under scenario s, computed directly.
double scenario_opt(const MinMaxInstance& inst, int s);

// max_S (c^S(T) - C*(S)) using the instance's cached optima.
double evaluate_regret(const MinMaxInstance& inst, const EdgeSet& tree);
// Same value, recomputing every C*(S).
double evaluate_regret_uncached(const MinMaxInstance& inst, const EdgeSet& tree);

// Throws kInvalidTwoStageSolution naming the offending scenario when the
// first stage is not a forest, overlaps a completion, or fails to span.
void validate_two_stage_solution(const TwoStageInstance& inst, const TwoStageSolution& sol);

// max_S (c(E1) + c^S(E2^S)).
double evaluate_2stage(const TwoStageInstance& inst, const TwoStageSolution& sol);

// Optimal completion of a first-stage forest under every scenario: Kruskal on
// the graph with `first_stage` contracted.
TwoStageSolution complete_first_stage(const TwoStageInstance& inst, const EdgeSet& first_stage);

}  // namespace rmst
