#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rmst/error.hpp"
#include "rmst/exact.hpp"
#include "rmst/reductions.hpp"

using namespace rmst;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

LabelCoverInstance single_edge_lc() { return {1, 1, 2, {{0, 0, {{1, 1}, {2, 2}}}}}; }

// K_{2,2} with two labels. With `twisted` the (v2, w2) relation swaps labels,
// so no labeling with one label per vertex satisfies all four edges.
LabelCoverInstance square_lc(bool twisted) {
  LabelCoverInstance lc{2, 2, 2, {}};
  for (int v = 0; v < 2; ++v) {
    for (int w = 0; w < 2; ++w) {
      if (twisted && v == 1 && w == 1) {
        lc.edges.push_back({v, w, {{1, 2}, {2, 1}}});
      } else {
        lc.edges.push_back({v, w, {{1, 1}, {2, 2}}});
      }
    }
  }
  return lc;
}

// Scenario count straight from the definition: per vertex, per g-subset of
// incident components, per choice of one pair in each with distinct labels
// at that vertex; plus the zero scenario.
std::int64_t count_scenarios(const LabelCoverInstance& lc, int g) {
  std::int64_t total = 1;
  auto side = [&](int count, bool left) {
    for (int x = 0; x < count; ++x) {
      std::vector<int> inc;
      for (int i = 0; i < static_cast<int>(lc.edges.size()); ++i) {
        if ((left ? lc.edges[i].v : lc.edges[i].w) == x) inc.push_back(i);
      }
      const int d = static_cast<int>(inc.size());
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (std::popcount(mask) != g) continue;
        std::vector<int> comps;
        for (int i = 0; i < d; ++i) {
          if (mask >> i & 1u) comps.push_back(inc[i]);
        }
        std::vector<int> labels;
        auto rec = [&](auto&& self, size_t k) -> void {
          if (k == comps.size()) {
            ++total;
            return;
          }
          for (const auto& [a, b] : lc.edges[comps[k]].pairs) {
            const int l = left ? a : b;
            if (std::find(labels.begin(), labels.end(), l) != labels.end()) continue;
            labels.push_back(l);
            self(self, k + 1);
            labels.pop_back();
          }
        };
        rec(rec, 0);
      }
    }
  };
  side(lc.num_left, true);
  if (g > 1) side(lc.num_right, false);
  return total;
}

LabelCoverInstance random_lc(std::mt19937_64& rng) {
  LabelCoverInstance lc{1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 2), {}};
  for (int v = 0; v < lc.num_left; ++v) {
    for (int w = 0; w < lc.num_right; ++w) {
      if (rng() % 3 == 0 && !(v == 0 && w == 0)) continue;
      LabelCoverEdge e{v, w, {}};
      for (int a = 1; a <= lc.num_labels; ++a) {
        for (int b = 1; b <= lc.num_labels; ++b) {
          if (rng() % 2) e.pairs.push_back({a, b});
        }
      }
      if (e.pairs.size() < 2) e.pairs = {{1, 1}, {2, 2}};
      lc.edges.push_back(e);
    }
  }
  return lc;
}

CnfFormula two_clause() { return {3, {{1, 2, 3}, {-1, -2, -3}}}; }

CnfFormula all_sign_patterns() {
  CnfFormula phi{3, {}};
  for (int mask = 0; mask < 8; ++mask) {
    phi.clauses.push_back({mask & 1 ? -1 : 1, mask & 2 ? -2 : 2, mask & 4 ? -3 : 3});
  }
  return phi;
}

}  // namespace

TEST_CASE("label cover single edge example") {
  LabelCoverReduction red = gen_label_cover(single_edge_lc(), 1);
  const MinMaxInstance& inst = red.instance;
  CHECK(inst.graph().num_vertices() == 5);
  CHECK(inst.graph().num_edges() == 5);
  CHECK(inst.num_scenarios() == 3);
  int label_edges = 0;
  for (const auto& info : red.label_info) label_edges += info.has_value();
  CHECK(label_edges == 2);
  CHECK(red.hub_edges.size() == 1);
  // The zero scenario comes last.
  for (double c : inst.scenario(2)) CHECK(c == 0.0);
  CHECK(red.metadata().is_object());
}

TEST_CASE("label cover scenario count matches the definition") {
  CHECK(count_scenarios(square_lc(true), 2) == 9);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    LabelCoverInstance lc = random_lc(rng);
    for (int g = 1; g <= 3; ++g) {
      const std::int64_t want = count_scenarios(lc, g);
      CHECK(label_cover_scenario_count(lc, g) == want);
      if (want <= 2000) CHECK(gen_label_cover(lc, g).instance.num_scenarios() == want);
    }
  }
  CHECK(code_of([] { gen_label_cover(square_lc(true), 2, 5); }) == ErrorCode::kScenarioBlowup);
  CHECK(code_of([] { gen_label_cover(LabelCoverInstance{1, 1, 2, {{0, 0, {{1, 1}}}}}, 1); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { gen_label_cover(single_edge_lc(), 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("label cover witnesses") {
  LabelCoverInstance lc = single_edge_lc();
  LabelCoverReduction red = gen_label_cover(lc, 1);
  Labeling l{{{2}}, {{2}}};
  CHECK(labeling_is_total(lc, l));
  CHECK(labeling_value(l) == 1);
  EdgeSet t = labeling_to_tree(lc, red, l);
  CHECK(is_spanning_tree(red.instance.graph(), t));
  CHECK(evaluate_minmax(red.instance, t) <= 1.0);
  CHECK(code_of([&] { labeling_to_tree(lc, red, Labeling{{{1}}, {{2}}}); }) == ErrorCode::kLabelingNotTotal);

  LabelCoverInstance ok = square_lc(false);
  LabelCoverReduction red_ok = gen_label_cover(ok, 2);
  EdgeSet witness = labeling_to_tree(ok, red_ok, Labeling{{{1}, {1}}, {{1}, {1}}});
  CHECK(evaluate_minmax(red_ok.instance, witness) <= 1.0);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    LabelCoverInstance r = random_lc(rng);
    LabelCoverReduction rr = gen_label_cover(r, 1);
    Labeling all;
    for (int v = 0; v < r.num_left; ++v) all.left.push_back({1, 2, 3});
    for (int w = 0; w < r.num_right; ++w) all.right.push_back({1, 2, 3});
    CHECK(is_spanning_tree(rr.instance.graph(), labeling_to_tree(r, rr, all)));
  }
}

TEST_CASE("label cover gap instance") {
  LabelCoverInstance lc = square_lc(true);
  LabelCoverReduction red = gen_label_cover(lc, 2);
  CHECK(red.instance.graph().num_vertices() == 15);
  CHECK(red.instance.graph().num_edges() == 18);
  CHECK(red.instance.num_scenarios() == 9);
  CHECK(enumerate_spanning_trees(red.instance.graph(), 1000).size() == 256);
  CHECK(brute_force_minmax(red.instance).value >= 2.0);
}

TEST_CASE("3-SAT construction") {
  SatReduction red = gen_3sat(two_clause());
  const Graph& g = red.instance.graph();
  CHECK(g.num_vertices() == 9);
  CHECK(g.num_edges() == 12);
  CHECK(red.instance.num_scenarios() == 3);
  CHECK(red.scenario_pairs.size() == 3);
  CHECK(oracle::reduces_to_single_edge(g.num_vertices(), g.edges(), 0, 8));
  CHECK(red.instance.has_negative_costs());
  for (int s = 0; s < red.instance.num_scenarios(); ++s) {
    int high = 0;
    for (double c : red.instance.scenario(s)) {
      CHECK((c == -1.0 || c == 7.0));
      high += c == 7.0;
    }
    CHECK(high == 2);
  }

  SatReduction big = gen_3sat(all_sign_patterns());
  CHECK(big.instance.graph().num_vertices() == 33);
  CHECK(big.instance.graph().num_edges() == 48);
  CHECK(big.instance.num_scenarios() == 48);
  CHECK(oracle::reduces_to_single_edge(33, big.instance.graph().edges(), 0, 32));
}

TEST_CASE("3-SAT witnesses") {
  CnfFormula phi = two_clause();
  SatReduction red = gen_3sat(phi);
  EdgeSet t = assignment_to_tree(phi, red, {true, false, false});
  CHECK(is_spanning_tree(red.instance.graph(), t));
  CHECK(evaluate_minmax(red.instance, t) == 0.0);
  CHECK(code_of([&] { assignment_to_tree(phi, red, {true, true, true}); }) ==
        ErrorCode::kAssignmentDoesNotSatisfy);
  CHECK(branch_and_bound_minmax(red.instance).value == 0.0);

  std::mt19937_64 rng(21);
  int built = 0;
  while (built < 30) {
    const int vars = 3 + static_cast<int>(rng() % 3);
    const int m = 2 + static_cast<int>(rng() % 5);
    std::vector<bool> assignment(static_cast<size_t>(vars));
    for (int v = 0; v < vars; ++v) assignment[v] = rng() % 2;
    CnfFormula f{vars, {}};
    for (int i = 0; i < m; ++i) {
      std::array<int, 3> c{};
      do {
        std::vector<int> pool(static_cast<size_t>(vars));
        std::iota(pool.begin(), pool.end(), 1);
        std::shuffle(pool.begin(), pool.end(), rng);
        for (int j = 0; j < 3; ++j) c[j] = rng() % 2 ? pool[j] : -pool[j];
      } while (std::none_of(c.begin(), c.end(), [&](int lit) { return (lit > 0) == assignment[std::abs(lit) - 1]; }));
      f.clauses.push_back(c);
    }
    try {
      validate_cnf(f);
    } catch (const Error&) {
      continue;
    }
    ++built;
    SatReduction r = gen_3sat(f);
    EdgeSet w = assignment_to_tree(f, r, assignment);
    CHECK(is_spanning_tree(r.instance.graph(), w));
    CHECK(evaluate_minmax(r.instance, w) == 0.0);
    CHECK(w.size() == 4 * m);
  }
}

TEST_CASE("DIMACS") {
  CnfFormula phi = parse_dimacs("c example\np cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
  CHECK(phi.num_vars == 3);
  REQUIRE(phi.clauses.size() == 2);
  CHECK(phi.clauses[1] == std::array<int, 3>{-1, -2, -3});
  CnfFormula back = parse_dimacs(cnf_to_dimacs(phi));
  CHECK(back.clauses == phi.clauses);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0\n"), Error);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), Error);
  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), Error);
  CHECK_THROWS_AS(validate_cnf(CnfFormula{3, {{1, 2, 3}}}), Error);
  CHECK_THROWS_AS(validate_cnf(CnfFormula{3, {{1, 1, 2}, {-1, -2, -3}}}), Error);
}

TEST_CASE("set cover construction") {
  SetCoverInstance sc{3, {{0, 1}, {1, 2}, {2}}};
  SetCoverReduction red = gen_set_cover(sc);
  const TwoStageInstance& inst = red.instance;
  const Graph& g = inst.graph();
  CHECK(g.num_vertices() == 7);
  CHECK(g.num_edges() == 21);
  CHECK(inst.num_scenarios() == 3);
  std::set<std::pair<int, int>> pairs;
  for (const Edge& e : g.edges()) pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  CHECK(pairs.size() == 21);
  std::multiset<double> first(inst.first_stage().begin(), inst.first_stage().end());
  CHECK(first.count(1.0) == 3);
  CHECK(first.count(4.0) == 18);
  for (EdgeId e : red.root_edges) CHECK(inst.first_stage()[e] == 1.0);

  TwoStageSolution sol = cover_to_solution(sc, red, {0, 1});
  CHECK(evaluate_2stage(inst, sol) == 2.0);
  std::vector<int> cover = solution_to_cover(sc, red, sol);
  CHECK(is_cover(sc, cover));
  CHECK(cover.size() <= 2);
  CHECK(evaluate_2stage(inst, cover_to_solution(sc, red, {0, 1, 2})) == 3.0);
  CHECK(code_of([&] { cover_to_solution(sc, red, {}); }) == ErrorCode::kNotACover);
  CHECK(code_of([&] { cover_to_solution(sc, red, {0}); }) == ErrorCode::kNotACover);
  CHECK(min_cover_size(sc) == 2);
  CHECK(brute_force_2stage(gen_set_cover(SetCoverInstance{3, {{0, 1, 2}, {1}}}).instance).value == 1.0);
  CHECK_THROWS_AS(validate_set_cover(SetCoverInstance{3, {{0, 1}}}), Error);
}

TEST_CASE("set cover reduction preserves cost") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const int m = 1 + static_cast<int>(rng() % 4);
    SetCoverInstance sc{n, std::vector<std::vector<int>>(static_cast<size_t>(m))};
    for (int j = 0; j < n; ++j) sc.subsets[rng() % m].push_back(j);
    for (auto& s : sc.subsets) {
      for (int j = 0; j < n; ++j) {
        if (rng() % 3 == 0 && std::find(s.begin(), s.end(), j) == s.end()) s.push_back(j);
      }
      std::sort(s.begin(), s.end());
    }
    const int want = oracle::min_set_cover(n, sc.subsets);
    CHECK(min_cover_size(sc) == want);
    SetCoverReduction red = gen_set_cover(sc);
    ExactTwoStageResult r = brute_force_2stage(red.instance);
    CHECK(r.value == want);
    std::vector<int> cover = solution_to_cover(sc, red, r.solution);
    CHECK(is_cover(sc, cover));
    CHECK(static_cast<int>(cover.size()) <= want);
  }
}

TEST_CASE("JSON specs") {
  LabelCoverInstance lc = square_lc(true);
  LabelCoverInstance back = label_cover_from_json(label_cover_to_json(lc));
  CHECK(label_cover_to_json(back) == label_cover_to_json(lc));
  SetCoverInstance sc{3, {{0, 1}, {1, 2}, {2}}};
  CHECK(set_cover_from_json(set_cover_to_json(sc)).subsets == sc.subsets);
  Labeling l = labeling_from_json(nlohmann::json::parse(R"({"left":[[1]],"right":[[2,1]]})"));
  CHECK(l.right[0] == std::vector<int>{2, 1});
  CHECK(code_of([] { set_cover_from_json(nlohmann::json::parse(R"({"elements":"x"})")); }) ==
        ErrorCode::kSchemaError);
}

TEST_CASE("random generator") {
  RandomInstanceSpec spec;
  spec.n = 7;
  spec.m = 12;
  spec.num_scenarios = 3;
  CHECK(save_instance(gen_random(spec)) == save_instance(gen_random(spec)));
  spec.seed = 2;
  const std::string other = save_instance(gen_random(spec));
  spec.seed = 1;
  CHECK(other != save_instance(gen_random(spec)));

  spec.two_stage = true;
  CHECK(std::holds_alternative<TwoStageInstance>(gen_random(spec)));

  std::vector<std::int64_t> counts(10, 0);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomInstanceSpec s{8, 7 + static_cast<int>(seed % 15), 2, 0, 9, false, seed};
    MinMaxInstance inst = std::get<MinMaxInstance>(gen_random(s));
    CHECK(inst.graph().is_connected());
    CHECK(inst.graph().num_edges() == s.m);
    std::set<std::pair<int, int>> pairs;
    for (const Edge& e : inst.graph().edges()) pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    CHECK(static_cast<int>(pairs.size()) == s.m);
    for (const CostRow& row : inst.scenarios()) {
      for (double c : row) ++counts[static_cast<size_t>(c)];
    }
  }
  CHECK(oracle::chi_squared_uniform(counts) < oracle::chi_squared_critical(9));

  CHECK(code_of([] { gen_random(RandomInstanceSpec{5, 3, 1, 0, 9, false, 1}); }) == ErrorCode::kParamsInfeasible);
  CHECK(code_of([] { gen_random(RandomInstanceSpec{4, 7, 1, 0, 9, false, 1}); }) == ErrorCode::kParamsInfeasible);
  CHECK(code_of([] { gen_random(RandomInstanceSpec{4, 4, 1, 5, 2, false, 1}); }) == ErrorCode::kParamsInfeasible);
}
