#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rmst/graph.hpp"
#include "rmst/instance.hpp"
#include "rmst/relaxation.hpp"
#include "rmst/rng.hpp"

namespace rmst {

inline constexpr std::uint64_t kDefaultSeed = 20100401;

// ceil(2 (11 + sqrt 21) ln n): number of sampling rounds for the min-max
// rounding. With delta = sqrt(2 / (11 + sqrt 21)) this solves
// (1 - delta) r / 2 = 10 ln n and r delta^2 / 4 = ln n.
int compute_r_minmax(int n);

// ceil((sqrt(ln n + ln K) + sqrt(21 ln n + ln K))^2) for the two-stage
// rounding.
int compute_r_2stage(int n, int num_scenarios);

// Per-iteration cost multiplier
//   (rho1 ln n + 1.5) (1 + 2 sqrt(1 + (ln K + ln f) / (rho1 ln n)))
// bounding max_S c^S(edges sampled in one round) in units of OPT.
// Holds with probability >= 1 - 1 / (f n^(rho1 - 1)) when rho1 >= 2, f >= 1
// and some rho2, rho3 with K <= n^rho2, f <= n^rho3, rho2 + rho3 <= 3.92 rho1
// exist; otherwise throws kParamsInadmissible.
double per_iteration_bound_multiplier(int n, int num_scenarios, double f, double rho1);

// Failure probability attached to the multiplier above.
double per_iteration_bound_failure_probability(int n, double f, double rho1);

struct RoundingTraceRecord {
  int iteration = 0;
  int components_before = 0;
  int components_after = 0;
  std::vector<double> per_scenario_added_cost;
  bool connected = false;
};

using RoundingTrace = std::function<void(const RoundingTraceRecord&)>;

struct RoundingOptions {
  int threads = 1;
  RoundingTrace trace;
};

// Includes edge e independently with probability probs[e]. Draws come from
// the counter generator at (iteration, stream, e).
EdgeSet sample_edges(std::span<const double> probs, const CounterRng& rng,
                     std::uint64_t iteration, std::uint64_t stream, int threads = 1);

enum class RoundingStatus { kSuccess, kNotConnected };

struct RoundingOutcome {
  RoundingStatus status = RoundingStatus::kNotConnected;
  std::optional<EdgeSet> tree;
  std::optional<double> value;
  int iterations_used = 0;
  std::uint64_t seed = 0;
};

// Repeatedly samples every edge with probability x_e into an accumulating
// subgraph, stopping as soon as it connects or after
// compute_r_minmax(n) rounds. On success returns the minimum
// spanning tree of the accumulated subgraph under weights max_S c^S_e.
RoundingOutcome round_minmax(const MinMaxInstance& inst, const FractionalSolution& x_hat,
                             std::uint64_t seed, const RoundingOptions& options = {});

struct TwoStageRoundingOutcome {
  RoundingStatus status = RoundingStatus::kNotConnected;
  std::optional<TwoStageSolution> solution;
  std::optional<double> value;
  int iterations_used = 0;
  std::uint64_t seed = 0;
};

// Each round samples first-stage edges (shared by every scenario) with
// probability x_e and second-stage edges for scenario S with probability
// x^S_e. Stops once every scenario subgraph is connected or after
// compute_r_2stage(n, K) rounds. The first stage becomes the
// minimum spanning forest of the sampled first-stage edges under c_e; each
// scenario is completed with its cheapest sampled second-stage edges.
TwoStageRoundingOutcome round_2stage(const TwoStageInstance& inst, const FractionalSolution& sol,
                                     std::uint64_t seed, const RoundingOptions& options = {});

struct ApproxParams {
  std::uint64_t seed = kDefaultSeed;
  int max_restarts = 3;
  double tol_rel = 1e-6;
  int threads = 1;
  RoundingTrace trace;
  std::function<void(const LpTraceRecord&)> lp_trace;
};

enum class ApproxStatus { kSuccess, kRestartsExhausted };

struct MinMaxApproxResult {
  ApproxStatus status = ApproxStatus::kRestartsExhausted;
  RoundingOutcome outcome;  // last attempt
  double lp_bound = 0.0;
  int attempts = 0;
  int total_iterations = 0;
};

struct TwoStageApproxResult {
  ApproxStatus status = ApproxStatus::kRestartsExhausted;
  TwoStageRoundingOutcome outcome;
  double lp_bound = 0.0;
  int attempts = 0;
  int total_iterations = 0;
};

// Rounds `lp` with seeds seed, seed + 1, ... until one attempt connects or
// max_restarts restarts have failed.
MinMaxApproxResult round_minmax_with_restarts(const MinMaxInstance& inst,
                                              const MinFeasibleBudget& lp,
                                              const ApproxParams& params);
TwoStageApproxResult round_2stage_with_restarts(const TwoStageInstance& inst,
                                                const MinFeasibleBudget& lp,
                                                const ApproxParams& params);

// Solves the relaxation, then rounds it.
MinMaxApproxResult solve_minmax_approx(const MinMaxInstance& inst, const ApproxParams& params);
TwoStageApproxResult solve_2stage_approx(const TwoStageInstance& inst, const ApproxParams& params);

}  // namespace rmst
