#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "rmst/graph.hpp"
#include "rmst/instance.hpp"
#include "rmst/lp.hpp"

namespace rmst {

// Row  sum_{e in delta(side)} x_e >= 1.
struct CutConstraint {
  std::vector<VertexId> side;
  std::vector<EdgeId> edges;
  double value = 0.0;  // weight of the cut at separation time
};

// Global-min-cut separation for the cut-set rows. Returns the minimum cut
// when its weight is below 1 - tol.
std::optional<CutConstraint> separate(const Graph& graph, std::span<const double> weights,
                                      double tol);

struct FractionalSolution {
  std::vector<double> x;
  // Empty for min-max; one row per scenario for the two-stage program.
  std::vector<std::vector<double>> second_stage;
};

struct FeasibilityOutcome {
  bool feasible = false;
  FractionalSolution solution;  // meaningful only when feasible
  int lp_solves = 0;
  int cuts_added = 0;
};

struct LpTraceRecord {
  double budget = 0.0;
  int round = 0;
  int pool_size = 0;
  bool lp_feasible = false;
  int new_cuts = 0;
};

struct RelaxationOptions {
  double separation_tol = 1e-7;
  // Worker count for per-scenario separation in the two-stage program.
  int threads = 1;
  int max_rounds = 10000;
  // Cut-pool size limit; 0 selects 10 n K. Exceeding it raises
  // kNumericalFailure.
  int max_pool = 0;
  std::function<void(const LpTraceRecord&)> trace;
};

// Feasibility program for the min-max problem at budget C:
//   sum_e c^S_e x_e <= C (every S), sum_e x_e = n - 1,
//   cut rows for every vertex subset, 0 <= x <= 1,
//   x_e = 0 whenever some scenario prices e above C.
// Cut rows are generated lazily and kept across calls to solve(), since they
// do not depend on C.
class MinMaxRelaxation {
 public:
  explicit MinMaxRelaxation(const MinMaxInstance& inst, RelaxationOptions options = {});

  // With `minimize_budget` the budget rows read <= t for a new variable
  // 0 <= t <= budget and the objective becomes t; the rejection rule still
  // uses `budget`.
  FeasibilityOutcome solve(double budget, bool minimize_budget = false);
  // Smallest C at which `sol` satisfies the budget rows and the rejection
  // rule (entries <= 1e-9 count as zero).
  double certified_budget(const FractionalSolution& sol) const;
  const std::vector<std::vector<EdgeId>>& cut_pool() const { return pool_; }

 private:
  bool add_cut(std::vector<EdgeId> edges);

  const MinMaxInstance& inst_;
  RelaxationOptions options_;
  std::vector<std::vector<EdgeId>> pool_;
  std::set<std::vector<EdgeId>> seen_;
};

// Two-stage analogue with first-stage variables x_e and per-scenario
// variables x^S_e; cut and cardinality rows apply to x + x^S for each S.
class TwoStageRelaxation {
 public:
  explicit TwoStageRelaxation(const TwoStageInstance& inst, RelaxationOptions options = {});

  FeasibilityOutcome solve(double budget, bool minimize_budget = false);
  double certified_budget(const FractionalSolution& sol) const;
  const std::vector<std::vector<std::vector<EdgeId>>>& cut_pools() const { return pools_; }

 private:
  bool add_cut(int scenario, std::vector<EdgeId> edges);

  const TwoStageInstance& inst_;
  RelaxationOptions options_;
  std::vector<std::vector<std::vector<EdgeId>>> pools_;
  std::vector<std::set<std::vector<EdgeId>>> seen_;
  int pool_size_ = 0;
};

struct MinFeasibleBudget {
  double c_hat = 0.0;
  FractionalSolution solution;
  int probes = 0;
  int lp_solves = 0;
};

// Bisection on [0, (n-1) c_max] until hi - lo <= tol_rel * max(1, hi),
// followed by one budget-minimizing solve at hi. Returns the budget c <= hi
// certified by that solve, with the fractional solution found at c.
// Throws kNegativeCosts and kNumericalFailure.
MinFeasibleBudget find_min_feasible_C(const MinMaxInstance& inst, double tol_rel = 1e-6,
                                           const RelaxationOptions& options = {});
MinFeasibleBudget find_min_feasible_C_2stage(const TwoStageInstance& inst,
                                                  double tol_rel = 1e-6,
                                                  const RelaxationOptions& options = {});

}  // namespace rmst
