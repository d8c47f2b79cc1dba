#pragma once

#include <cstdint>

#include "rmst/graph.hpp"
#include "rmst/instance.hpp"

namespace rmst {

inline constexpr std::int64_t kDefaultTreeLimit = 10'000'000;
inline constexpr int kDefaultTwoStageEdgeLimit = 45;

struct ExactResult {
  double value = 0.0;
  EdgeSet tree;
  std::int64_t nodes_explored = 0;
  // False only when branch-and-bound stopped at its time limit; `tree` is
  // then the best incumbent.
  bool optimal = true;
};

struct ExactTwoStageResult {
  double value = 0.0;
  TwoStageSolution solution;
  std::int64_t nodes_explored = 0;
};

// Exhaustive search over spanning trees. Ties go to the lexicographically
// smallest edge-index set. Throws kTooManyTrees.
ExactResult brute_force_minmax(const MinMaxInstance& inst, std::int64_t tree_limit = kDefaultTreeLimit);
ExactResult brute_force_regret(const MinMaxInstance& inst, std::int64_t tree_limit = kDefaultTreeLimit);

// Exact two-stage optimum. Searches first-stage forests E1 depth first; the
// best completion of a fixed E1 is a per-scenario minimum spanning tree of
// the graph with E1 contracted. Subtrees are pruned with the bound
//   max_S [ c(E1) + MST of G/E1 under min(c_e, c^S_e) for undecided edges
//           and c^S_e for rejected ones ],
// which relaxes the shared first stage per scenario. Requires nonnegative
// costs; throws kInstanceTooLarge above `max_edges` edges.
ExactTwoStageResult brute_force_2stage(const TwoStageInstance& inst,
                                       int max_edges = kDefaultTwoStageEdgeLimit);

// Best-first branch-and-bound on edge inclusion/exclusion. The node bound is
// max_S (committed cost + MST of the contracted remainder under c^S), which
// is valid for negative costs too.
ExactResult branch_and_bound_minmax(const MinMaxInstance& inst, double time_limit_s = 600.0);

struct BaselineResult {
  EdgeSet tree;
  double value = 0.0;
};

// Minimum spanning tree under the scenario-average costs; a K-approximation
// for nonnegative costs. Throws kNegativeCosts.
BaselineResult baseline_mean_scenario(const MinMaxInstance& inst);

}  // namespace rmst
