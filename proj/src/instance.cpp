#include "rmst/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rmst/error.hpp"

namespace rmst {

namespace {

bool check_row(const CostRow& row, int m, const std::string& what) {
  if (static_cast<int>(row.size()) != m) {
    throw Error(ErrorCode::kRowLengthMismatch,
                what + " has length " + std::to_string(row.size()) + ", expected " +
                    std::to_string(m));
  }
  bool negative = false;
  for (double c : row) {
    if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, what + " has a non-finite cost");
    negative = negative || c < 0.0;
  }
  return negative;
}

double row_max(const CostRow& row, double acc) {
  for (double c : row) acc = std::max(acc, c);
  return acc;
}

}  // namespace

MinMaxInstance::MinMaxInstance(Graph graph, std::vector<CostRow> scenarios, std::string name)
    : name_(std::move(name)),
      graph_(std::move(graph)),
      scenarios_(std::move(scenarios)),
      optima_(std::make_shared<OptimaCache>()) {
  if (scenarios_.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one scenario required");
  for (size_t s = 0; s < scenarios_.size(); ++s) {
    has_negative_ |= check_row(scenarios_[s], graph_.num_edges(), "scenario " + std::to_string(s));
  }
  if (!graph_.is_connected()) throw Error(ErrorCode::kDisconnectedGraph, "instance graph is not connected");
}

double MinMaxInstance::max_cost() const {
  double acc = 0.0;
  for (const CostRow& row : scenarios_) acc = row_max(row, acc);
  return acc;
}

const std::vector<double>& MinMaxInstance::scenario_optima() const {
  std::call_once(optima_->once, [this] {
    std::vector<double> values;
    values.reserve(scenarios_.size());
    for (int s = 0; s < num_scenarios(); ++s) values.push_back(scenario_opt(*this, s));
    optima_->values = std::move(values);
  });
  return optima_->values;
}

TwoStageInstance::TwoStageInstance(Graph graph, CostRow first_stage,
                                   std::vector<CostRow> scenarios, std::string name)
    : name_(std::move(name)),
      graph_(std::move(graph)),
      first_stage_(std::move(first_stage)),
      scenarios_(std::move(scenarios)) {
  if (scenarios_.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one scenario required");
  has_negative_ = check_row(first_stage_, graph_.num_edges(), "first stage");
  for (size_t s = 0; s < scenarios_.size(); ++s) {
    has_negative_ |= check_row(scenarios_[s], graph_.num_edges(), "scenario " + std::to_string(s));
  }
  if (!graph_.is_connected()) throw Error(ErrorCode::kDisconnectedGraph, "instance graph is not connected");
}

double TwoStageInstance::max_cost() const {
  double acc = row_max(first_stage_, 0.0);
  for (const CostRow& row : scenarios_) acc = row_max(row, acc);
  return acc;
}

double tree_cost(const EdgeSet& tree, const CostRow& costs) {
  double total = 0.0;
  for (EdgeId e : tree.indices()) total += costs[static_cast<size_t>(e)];
  return total;
}

namespace {

void require_tree(const Graph& graph, const EdgeSet& tree) {
  if (!is_spanning_tree(graph, tree)) {
    throw Error(ErrorCode::kNotASpanningTree, "edge set is not a spanning tree");
  }
}

}  // namespace

double evaluate_minmax(const MinMaxInstance& inst, const EdgeSet& tree) {
  require_tree(inst.graph(), tree);
  double worst = -std::numeric_limits<double>::infinity();
  for (const CostRow& row : inst.scenarios()) worst = std::max(worst, tree_cost(tree, row));
  return worst;
}

double scenario_opt(const MinMaxInstance& inst, int s) {
  if (s < 0 || s >= inst.num_scenarios()) {
    throw Error(ErrorCode::kInvalidArgument, "scenario index out of range");
  }
  const CostRow& row = inst.scenario(s);
  return tree_cost(kruskal_mst(inst.graph(), row), row);
}

double evaluate_regret(const MinMaxInstance& inst, const EdgeSet& tree) {
  require_tree(inst.graph(), tree);
  const std::vector<double>& optima = inst.scenario_optima();
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    worst = std::max(worst, tree_cost(tree, inst.scenario(s)) - optima[s]);
  }
  return worst;
}

double evaluate_regret_uncached(const MinMaxInstance& inst, const EdgeSet& tree) {
  require_tree(inst.graph(), tree);
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    worst = std::max(worst, tree_cost(tree, inst.scenario(s)) - scenario_opt(inst, s));
  }
  return worst;
}

void validate_two_stage_solution(const TwoStageInstance& inst, const TwoStageSolution& sol) {
  const Graph& g = inst.graph();
  const int m = g.num_edges();
  auto fail = [](int s, const std::string& why) {
    throw Error(ErrorCode::kInvalidTwoStageSolution,
                (s < 0 ? std::string("first stage") : "scenario " + std::to_string(s)) + ": " + why);
  };
  if (sol.first_stage.universe() != m) fail(-1, "edge universe mismatch");
  if (static_cast<int>(sol.completions.size()) != inst.num_scenarios()) {
    throw Error(ErrorCode::kInvalidTwoStageSolution,
                "expected " + std::to_string(inst.num_scenarios()) + " completions, got " +
                    std::to_string(sol.completions.size()));
  }
  {
    DisjointSets sets(g.num_vertices());
    for (EdgeId e : sol.first_stage.indices()) {
      if (!sets.unite(g.edge(e).u, g.edge(e).v)) fail(-1, "first-stage edges contain a cycle");
    }
  }
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const EdgeSet& comp = sol.completions[static_cast<size_t>(s)];
    if (comp.universe() != m) fail(s, "edge universe mismatch");
    EdgeSet tree = sol.first_stage;
    for (EdgeId e : comp.indices()) {
      if (sol.first_stage.contains(e)) fail(s, "completion overlaps the first stage");
      tree.insert(e);
    }
    if (!is_spanning_tree(g, tree)) fail(s, "first stage plus completion is not a spanning tree");
  }
}

double evaluate_2stage(const TwoStageInstance& inst, const TwoStageSolution& sol) {
  validate_two_stage_solution(inst, sol);
  const double first = tree_cost(sol.first_stage, inst.first_stage());
  double worst = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    worst = std::max(worst, first + tree_cost(sol.completions[static_cast<size_t>(s)],
                                              inst.scenario(s)));
  }
  return worst;
}

TwoStageSolution complete_first_stage(const TwoStageInstance& inst, const EdgeSet& first_stage) {
  TwoStageSolution sol{first_stage, {}};
  sol.completions.reserve(static_cast<size_t>(inst.num_scenarios()));
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    sol.completions.push_back(kruskal_complete(inst.graph(), inst.scenario(s), first_stage));
  }
  return sol;
}

}  // namespace rmst
