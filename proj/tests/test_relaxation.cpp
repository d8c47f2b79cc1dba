#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rmst/error.hpp"
#include "rmst/relaxation.hpp"

using namespace rmst;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

void check_feasible_point(const MinMaxInstance& inst, const FractionalSolution& sol, double budget) {
  const Graph& g = inst.graph();
  double total = 0.0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    CHECK(sol.x[e] >= -1e-9);
    CHECK(sol.x[e] <= 1.0 + 1e-9);
    total += sol.x[e];
    for (const CostRow& row : inst.scenarios()) {
      if (row[e] > budget) CHECK(sol.x[e] <= 1e-9);
    }
  }
  CHECK(std::fabs(total - (g.num_vertices() - 1)) <= 1e-7);
  for (const CostRow& row : inst.scenarios()) {
    double used = 0.0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) used += row[e] * sol.x[e];
    CHECK(used <= budget + 1e-7);
  }
  if (g.num_vertices() > 1) CHECK(global_min_cut(g, sol.x).value >= 1.0 - 1e-6);
}

}  // namespace

TEST_CASE("separate") {
  CHECK_FALSE(separate(triangle(), std::vector<double>{0.5, 0.5, 0.5}, 1e-7).has_value());
  auto cut = separate(triangle(), std::vector<double>{0.3, 0.3, 0.3}, 1e-7);
  REQUIRE(cut.has_value());
  CHECK(cut->value == doctest::Approx(0.6));
  CHECK(cut->edges.size() == 2);
}

TEST_CASE("separate agrees with exhaustive cut check") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> w(0.0, 0.8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 10));
    std::vector<double> x(static_cast<size_t>(g.num_edges()));
    for (double& v : x) v = w(rng);
    const double exact = oracle::exhaustive_min_cut(g, x);
    auto cut = separate(g, x, 1e-7);
    CHECK(cut.has_value() == (exact < 1.0 - 1e-7));
    if (cut) CHECK(std::fabs(oracle::cut_value(g, x, cut->side) - exact) <= 1e-9);
  }
}

TEST_CASE("min-max feasibility examples") {
  MinMaxInstance one(triangle(), {{1, 1, 1}});
  MinMaxRelaxation r1(one);
  CHECK(r1.solve(2.0).feasible);
  CHECK_FALSE(r1.solve(1.9).feasible);

  MinMaxInstance two(triangle(), {{2, 0, 0}, {0, 2, 0}});
  MinMaxRelaxation r2(two);
  CHECK_FALSE(r2.solve(1.5).feasible);
  FeasibilityOutcome ok = r2.solve(2.0);
  REQUIRE(ok.feasible);
  check_feasible_point(two, ok.solution, 2.0);

  CHECK_THROWS_AS(MinMaxRelaxation(MinMaxInstance(triangle(), {{-1, 0, 0}})), Error);
}

TEST_CASE("find_min_feasible_C examples") {
  MinFeasibleBudget a = find_min_feasible_C(MinMaxInstance(triangle(), {{1, 1, 1}}));
  CHECK(a.c_hat == doctest::Approx(2.0).epsilon(1e-6));
  MinFeasibleBudget b = find_min_feasible_C(MinMaxInstance(triangle(), {{2, 0, 0}, {0, 2, 0}}));
  CHECK(b.c_hat == doctest::Approx(2.0).epsilon(1e-6));
  MinFeasibleBudget z = find_min_feasible_C(MinMaxInstance(triangle(), {{0, 0, 0}}));
  CHECK(z.c_hat == 0.0);
}

TEST_CASE("min-max relaxation properties on random instances") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    MinMaxInstance inst = oracle::random_minmax(rng, n, static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 4));
    MinFeasibleBudget res = find_min_feasible_C(inst);
    CHECK(res.c_hat <= oracle::subset_minmax(inst) + 1e-4);
    check_feasible_point(inst, res.solution, res.c_hat);

    // Monotonicity with a shared cut pool.
    MinMaxRelaxation relax(inst);
    if (relax.solve(res.c_hat).feasible) CHECK(relax.solve(2.0 * res.c_hat + 1e-9).feasible);
    CHECK(static_cast<int>(relax.cut_pool().size()) <= 10 * n * inst.num_scenarios());
  }
}

TEST_CASE("two-stage relaxation examples") {
  MinFeasibleBudget a = find_min_feasible_C_2stage(TwoStageInstance(triangle(), {10, 10, 10}, {{0, 0, 0}}));
  CHECK(a.c_hat == doctest::Approx(0.0).epsilon(1e-6));
  MinFeasibleBudget b = find_min_feasible_C_2stage(TwoStageInstance(triangle(), {0, 0, 0}, {{10, 10, 10}}));
  CHECK(b.c_hat == doctest::Approx(0.0).epsilon(1e-6));
  REQUIRE(b.solution.second_stage.size() == 1);
}

TEST_CASE("two-stage relaxation solutions satisfy every row") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 5));
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<CostRow> rows;
    for (int s = 0; s < k; ++s) rows.push_back(oracle::random_int_costs(rng, g.num_edges(), 0, 9));
    TwoStageInstance inst(g, oracle::random_int_costs(rng, g.num_edges(), 0, 9), rows);
    MinFeasibleBudget res = find_min_feasible_C_2stage(inst);
    const auto& x = res.solution.x;
    for (int s = 0; s < k; ++s) {
      const auto& y = res.solution.second_stage[s];
      std::vector<double> combined(x.size());
      double total = 0.0, used = 0.0;
      for (size_t e = 0; e < x.size(); ++e) {
        combined[e] = x[e] + y[e];
        total += combined[e];
        used += inst.first_stage()[e] * x[e] + inst.scenario(s)[e] * y[e];
        if (inst.first_stage()[e] > res.c_hat) CHECK(x[e] <= 1e-9);
        if (inst.scenario(s)[e] > res.c_hat) CHECK(y[e] <= 1e-9);
      }
      CHECK(std::fabs(total - (n - 1)) <= 1e-7);
      CHECK(used <= res.c_hat + 1e-7);
      CHECK(global_min_cut(g, combined).value >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("parallel separation gives identical results") {
  std::mt19937_64 rng(5);
  Graph g = oracle::random_connected_graph(rng, 6, 5);
  std::vector<CostRow> rows;
  for (int s = 0; s < 3; ++s) rows.push_back(oracle::random_int_costs(rng, g.num_edges(), 0, 9));
  TwoStageInstance inst(g, oracle::random_int_costs(rng, g.num_edges(), 0, 9), rows);
  RelaxationOptions one, four;
  four.threads = 4;
  MinFeasibleBudget a = find_min_feasible_C_2stage(inst, 1e-6, one);
  MinFeasibleBudget b = find_min_feasible_C_2stage(inst, 1e-6, four);
  CHECK(a.c_hat == b.c_hat);
  CHECK(a.solution.x == b.solution.x);
  CHECK(a.solution.second_stage == b.solution.second_stage);
}
