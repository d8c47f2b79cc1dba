#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rmst/graph.hpp"
#include "rmst/instance.hpp"
#include "rmst/io.hpp"

namespace rmst {

// ---------------------------------------------------------------------------
// Label Cover -> min-max spanning tree.

struct LabelCoverEdge {
  int v = 0;  // left vertex
  int w = 0;  // right vertex
  // Admissible label pairs (a, b), labels in 1..num_labels.
  std::vector<std::pair<int, int>> pairs;
};

struct LabelCoverInstance {
  int num_left = 0;
  int num_right = 0;
  int num_labels = 0;
  std::vector<LabelCoverEdge> edges;
};

// Label sets per left and right vertex.
struct Labeling {
  std::vector<std::vector<int>> left;
  std::vector<std::vector<int>> right;
};

struct LabelEdgeInfo {
  int lc_edge = 0;
  int v = 0;
  int w = 0;
  int a = 0;
  int b = 0;
};

struct LabelCoverReduction {
  MinMaxInstance instance;
  int g = 0;
  VertexId hub = 0;
  std::vector<VertexId> left_vertex;           // per left vertex v
  std::vector<VertexId> right_copy;            // w^v, per Label Cover edge
  std::vector<EdgeId> hub_edges;               // (s, v), per left vertex
  std::vector<std::vector<EdgeId>> label_edges;  // per Label Cover edge, in pair order
  std::vector<std::optional<LabelEdgeInfo>> label_info;  // per graph edge

  nlohmann::json metadata() const;
};

inline constexpr std::int64_t kDefaultScenarioCap = 100'000;

// Every Label Cover edge is replaced by paths v - u_{a,b} - w^v, one per
// admissible pair, joined through a hub adjacent to every left vertex. Label
// edges (v, u_{a,b}) cost 1 in the scenarios built from g-tuples of
// pairwise label-distinct label edges around one vertex; all other costs are
// 0, and one all-zero scenario is always present. Scenarios form a set, so
// with g = 1 the right-side singletons (identical to the left-side ones) are
// not repeated.
// Throws kInvalidArgument for malformed input or relations with fewer than
// two pairs, kScenarioBlowup when the scenario count exceeds `scenario_cap`.
LabelCoverReduction gen_label_cover(const LabelCoverInstance& lc, int g,
                                    std::int64_t scenario_cap = kDefaultScenarioCap);

// Number of scenarios gen_label_cover builds, counting by enumeration.
// Stops counting once `cap` is exceeded.
std::int64_t label_cover_scenario_count(const LabelCoverInstance& lc, int g,
                                        std::int64_t cap = INT64_MAX);

bool labeling_is_total(const LabelCoverInstance& lc, const Labeling& labeling);
int labeling_value(const Labeling& labeling);

// One label edge per component (the first admissible pair satisfied by the
// labeling) plus hub and dummy edges. Throws kLabelingNotTotal.
EdgeSet labeling_to_tree(const LabelCoverInstance& lc, const LabelCoverReduction& red,
                         const Labeling& labeling);

// ---------------------------------------------------------------------------
// 3-SAT -> min-max spanning tree with negative costs.

struct CnfFormula {
  int num_vars = 0;
  // Literals are +/-(variable index), variables numbered from 1.
  std::vector<std::array<int, 3>> clauses;
};

// Throws kInvalidArgument unless every clause has 3 distinct literals over
// 1..num_vars and every variable occurs both positively and negatively.
void validate_cnf(const CnfFormula& phi);

CnfFormula parse_dimacs(std::string_view text);

struct SatReduction {
  MinMaxInstance instance;
  // Literal edge (s_i, v_j^i) of clause i, position j.
  std::vector<std::array<EdgeId, 3>> literal_edges;
  // Unordered contradictory literal-occurrence pair behind each scenario.
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> scenario_pairs;

  nlohmann::json metadata() const;
};

// Chain of clause gadgets s_i - v_j^i - t_i with t_i = s_{i+1}: 4m + 1
// vertices and 6m edges. Each scenario prices one contradictory pair of
// literal edges at 4m - 1 and every other edge at -1.
SatReduction gen_3sat(const CnfFormula& phi);

// assignment[x - 1] is the value of variable x. Picks the first true literal
// of every clause plus all three (v_j^i, t_i) edges.
// Throws kAssignmentDoesNotSatisfy.
EdgeSet assignment_to_tree(const CnfFormula& phi, const SatReduction& red,
                           const std::vector<bool>& assignment);

// ---------------------------------------------------------------------------
// Set Cover -> two-stage spanning tree.

struct SetCoverInstance {
  int num_elements = 0;
  // Element ids are 0-based.
  std::vector<std::vector<int>> subsets;
};

void validate_set_cover(const SetCoverInstance& sc);
bool is_cover(const SetCoverInstance& sc, const std::vector<int>& chosen);
// Exact minimum cover size by subset enumeration.
int min_cover_size(const SetCoverInstance& sc);

struct SetCoverReduction {
  TwoStageInstance instance;
  std::vector<VertexId> subset_vertex;   // u_i
  std::vector<VertexId> element_vertex;  // element j
  VertexId root = 0;
  std::vector<EdgeId> root_edges;        // (u_i, r), per subset

  nlohmann::json metadata() const;
};

// Complete graph on u_1..u_m, the elements and a root r. First-stage cost 1
// on (r, u_i) and m + 1 elsewhere; scenario j prices the cut around
// {j} u {u_i : j in U_i} at m + 1 and everything else at 0.
SetCoverReduction gen_set_cover(const SetCoverInstance& sc);

// Throws kNotACover.
TwoStageSolution cover_to_solution(const SetCoverInstance& sc, const SetCoverReduction& red,
                                   const std::vector<int>& cover);
// Throws kSolutionUsesForbiddenEdge when the solution pays m + 1 anywhere.
std::vector<int> solution_to_cover(const SetCoverInstance& sc, const SetCoverReduction& red,
                                   const TwoStageSolution& sol);

// ---------------------------------------------------------------------------
// JSON specs accepted by the CLI generators.
//   Label Cover: {"left": |V|, "right": |W|, "labels": N,
//                 "edges": [{"v": 0, "w": 0, "pairs": [[1, 1], [2, 2]]}, ...]}
//   Labeling:    {"left": [[1], ...], "right": [[2], ...]}
//   Set Cover:   {"elements": n, "subsets": [[0, 1], [1, 2], ...]}
// Throw kSchemaError.

LabelCoverInstance label_cover_from_json(const nlohmann::json& doc);
nlohmann::json label_cover_to_json(const LabelCoverInstance& lc);
Labeling labeling_from_json(const nlohmann::json& doc);
SetCoverInstance set_cover_from_json(const nlohmann::json& doc);
nlohmann::json set_cover_to_json(const SetCoverInstance& sc);
std::string cnf_to_dimacs(const CnfFormula& phi);

// ---------------------------------------------------------------------------
// Random instances.

struct RandomInstanceSpec {
  int n = 6;
  int m = 9;
  int num_scenarios = 3;
  int cost_min = 0;
  int cost_max = 9;
  bool two_stage = false;
  std::uint64_t seed = 1;
};

// Random spanning-tree skeleton plus distinct extra vertex pairs, edge list
// shuffled, integer costs uniform in [cost_min, cost_max].
// Throws kParamsInfeasible.
AnyInstance gen_random(const RandomInstanceSpec& spec);

}  // namespace rmst
