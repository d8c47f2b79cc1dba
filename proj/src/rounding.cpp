#include "rmst/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmst/error.hpp"
#include "rmst/parallel.hpp"

namespace rmst {

int compute_r_minmax(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  return static_cast<int>(std::ceil(2.0 * (11.0 + std::sqrt(21.0)) * std::log(n)));
}

int compute_r_2stage(int n, int num_scenarios) {
  if (n < 1 || num_scenarios < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n and K must be positive");
  }
  const double ln_n = std::log(n);
  const double ln_k = std::log(num_scenarios);
  const double root = std::sqrt(ln_n + ln_k) + std::sqrt(21.0 * ln_n + ln_k);
  return static_cast<int>(std::ceil(root * root));
}

double per_iteration_bound_multiplier(int n, int num_scenarios, double f, double rho1) {
  if (n < 2 || num_scenarios < 1 || !(f >= 1.0) || !(rho1 >= 2.0)) {
    throw Error(ErrorCode::kParamsInadmissible, "need n >= 2, K >= 1, f >= 1, rho1 >= 2");
  }
  const double ln_n = std::log(n);
  const double extra = std::log(num_scenarios) + std::log(f);
  // Smallest admissible rho2 + rho3 is (ln K + ln f) / ln n.
  if (extra / ln_n > 3.92 * rho1) {
    throw Error(ErrorCode::kParamsInadmissible,
                "K and f too large for rho1 = " + std::to_string(rho1));
  }
  const double scaled = rho1 * ln_n;
  return (scaled + 1.5) * (1.0 + 2.0 * std::sqrt(1.0 + extra / scaled));
}

double per_iteration_bound_failure_probability(int n, double f, double rho1) {
  return 1.0 / (f * std::pow(static_cast<double>(n), rho1 - 1.0));
}

EdgeSet sample_edges(std::span<const double> probs, const CounterRng& rng,
                     std::uint64_t iteration, std::uint64_t stream, int threads) {
  const int m = static_cast<int>(probs.size());
  std::vector<char> hit(static_cast<size_t>(m), 0);
  constexpr int kBlock = 64;
  const int blocks = (m + kBlock - 1) / kBlock;
  parallel_for(blocks, threads, [&](int b) {
    const int end = std::min(m, (b + 1) * kBlock);
    for (int e = b * kBlock; e < end; ++e) {
      hit[e] = rng.uniform(iteration, stream, static_cast<std::uint64_t>(e)) < probs[e];
    }
  });
  EdgeSet out(m);
  for (EdgeId e = 0; e < m; ++e) {
    if (hit[e]) out.insert(e);
  }
  return out;
}

namespace {

void check_fraction_length(const std::vector<double>& x, int m) {
  if (static_cast<int>(x.size()) != m) {
    throw Error(ErrorCode::kIncompatibleSolution, "fractional solution length does not match edge count");
  }
}

}  // namespace

RoundingOutcome round_minmax(const MinMaxInstance& inst, const FractionalSolution& x_hat,
                             std::uint64_t seed, const RoundingOptions& options) {
  if (inst.has_negative_costs()) {
    throw Error(ErrorCode::kNegativeCosts, "rounding requires nonnegative costs");
  }
  const Graph& g = inst.graph();
  check_fraction_length(x_hat.x, g.num_edges());
  const int r = compute_r_minmax(g.num_vertices());
  const CounterRng rng(seed);

  RoundingOutcome out;
  out.seed = seed;
  EdgeSet accumulated(g.num_edges());
  DisjointSets sets(g.num_vertices());
  for (int k = 1; k <= r && sets.num_sets() > 1; ++k) {
    EdgeSet added = sample_edges(x_hat.x, rng, static_cast<std::uint64_t>(k), 0, options.threads);
    RoundingTraceRecord rec;
    rec.iteration = k;
    rec.components_before = sets.num_sets();
    for (EdgeId e : added.indices()) {
      accumulated.insert(e);
      sets.unite(g.edge(e).u, g.edge(e).v);
    }
    rec.components_after = sets.num_sets();
    rec.connected = sets.num_sets() == 1;
    out.iterations_used = k;
    if (options.trace) {
      for (const CostRow& row : inst.scenarios()) rec.per_scenario_added_cost.push_back(tree_cost(added, row));
      options.trace(rec);
    }
  }
  if (sets.num_sets() != 1) return out;

  std::vector<double> worst(static_cast<size_t>(g.num_edges()), 0.0);
  for (const CostRow& row : inst.scenarios()) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) worst[e] = std::max(worst[e], row[e]);
  }
  EdgeSet tree = kruskal_forest(g, worst, accumulated);
  out.status = RoundingStatus::kSuccess;
  out.value = evaluate_minmax(inst, tree);
  out.tree = std::move(tree);
  return out;
}

TwoStageRoundingOutcome round_2stage(const TwoStageInstance& inst, const FractionalSolution& sol,
                                     std::uint64_t seed, const RoundingOptions& options) {
  if (inst.has_negative_costs()) {
    throw Error(ErrorCode::kNegativeCosts, "rounding requires nonnegative costs");
  }
  const Graph& g = inst.graph();
  const int m = g.num_edges();
  const int k = inst.num_scenarios();
  check_fraction_length(sol.x, m);
  if (static_cast<int>(sol.second_stage.size()) != k) {
    throw Error(ErrorCode::kIncompatibleSolution, "second-stage rows missing");
  }
  for (const auto& row : sol.second_stage) check_fraction_length(row, m);

  const int r = compute_r_2stage(g.num_vertices(), k);
  const CounterRng rng(seed);
  TwoStageRoundingOutcome out;
  out.seed = seed;

  EdgeSet first_sampled(m);
  std::vector<EdgeSet> second_sampled(static_cast<size_t>(k), EdgeSet(m));
  std::vector<DisjointSets> sets(static_cast<size_t>(k), DisjointSets(g.num_vertices()));
  auto all_connected = [&] {
    return std::all_of(sets.begin(), sets.end(), [](const DisjointSets& d) { return d.num_sets() == 1; });
  };
  auto max_components = [&] {
    int worst = 0;
    for (const DisjointSets& d : sets) worst = std::max(worst, d.num_sets());
    return worst;
  };

  for (int it = 1; it <= r && !all_connected(); ++it) {
    RoundingTraceRecord rec;
    rec.iteration = it;
    rec.components_before = max_components();
    EdgeSet first_added = sample_edges(sol.x, rng, static_cast<std::uint64_t>(it), 0, options.threads);
    for (EdgeId e : first_added.indices()) first_sampled.insert(e);
    const double first_cost = tree_cost(first_added, inst.first_stage());
    std::vector<double> added_cost(static_cast<size_t>(k));
    // Scenario streams are independent, so they can be processed in parallel.
    parallel_for(k, options.threads, [&](int s) {
      EdgeSet second_added = sample_edges(sol.second_stage[s], rng, static_cast<std::uint64_t>(it),
                                          static_cast<std::uint64_t>(s) + 1, 1);
      for (EdgeId e : first_added.indices()) sets[s].unite(g.edge(e).u, g.edge(e).v);
      for (EdgeId e : second_added.indices()) {
        second_sampled[s].insert(e);
        sets[s].unite(g.edge(e).u, g.edge(e).v);
      }
      added_cost[s] = first_cost + tree_cost(second_added, inst.scenario(s));
    });
    rec.components_after = max_components();
    rec.connected = all_connected();
    rec.per_scenario_added_cost = std::move(added_cost);
    out.iterations_used = it;
    if (options.trace) options.trace(rec);
  }
  if (!all_connected()) return out;

  TwoStageSolution result;
  result.first_stage = kruskal_forest(g, inst.first_stage(), first_sampled);
  for (int s = 0; s < k; ++s) {
    result.completions.push_back(
        kruskal_complete(g, inst.scenario(s), result.first_stage, &second_sampled[s]));
  }
  out.status = RoundingStatus::kSuccess;
  out.value = evaluate_2stage(inst, result);
  out.solution = std::move(result);
  return out;
}

namespace {

template <typename Result, typename Instance, typename RoundFn>
Result restart_loop(const Instance& inst, const MinFeasibleBudget& lp, const ApproxParams& params,
                    RoundFn round) {
  Result result;
  result.lp_bound = lp.c_hat;
  RoundingOptions options{params.threads, params.trace};
  for (int attempt = 0; attempt <= params.max_restarts; ++attempt) {
    result.outcome = round(inst, lp.solution, params.seed + static_cast<std::uint64_t>(attempt), options);
    ++result.attempts;
    result.total_iterations += result.outcome.iterations_used;
    if (result.outcome.status == RoundingStatus::kSuccess) {
      result.status = ApproxStatus::kSuccess;
      return result;
    }
  }
  result.status = ApproxStatus::kRestartsExhausted;
  return result;
}

RelaxationOptions relaxation_options(const ApproxParams& params) {
  RelaxationOptions opts;
  opts.threads = params.threads;
  opts.trace = params.lp_trace;
  return opts;
}

}  // namespace

MinMaxApproxResult round_minmax_with_restarts(const MinMaxInstance& inst,
                                              const MinFeasibleBudget& lp,
                                              const ApproxParams& params) {
  return restart_loop<MinMaxApproxResult>(
      inst, lp, params,
      [](const MinMaxInstance& i, const FractionalSolution& x, std::uint64_t seed,
         const RoundingOptions& o) { return round_minmax(i, x, seed, o); });
}

TwoStageApproxResult round_2stage_with_restarts(const TwoStageInstance& inst,
                                                const MinFeasibleBudget& lp,
                                                const ApproxParams& params) {
  return restart_loop<TwoStageApproxResult>(
      inst, lp, params,
      [](const TwoStageInstance& i, const FractionalSolution& x, std::uint64_t seed,
         const RoundingOptions& o) { return round_2stage(i, x, seed, o); });
}

MinMaxApproxResult solve_minmax_approx(const MinMaxInstance& inst, const ApproxParams& params) {
  MinFeasibleBudget lp = find_min_feasible_C(inst, params.tol_rel, relaxation_options(params));
  return round_minmax_with_restarts(inst, lp, params);
}

TwoStageApproxResult solve_2stage_approx(const TwoStageInstance& inst, const ApproxParams& params) {
  MinFeasibleBudget lp = find_min_feasible_C_2stage(inst, params.tol_rel, relaxation_options(params));
  return round_2stage_with_restarts(inst, lp, params);
}

}  // namespace rmst
