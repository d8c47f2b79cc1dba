#include "rmst/relaxation.hpp"

#include <algorithm>
#include <string>

#include "rmst/error.hpp"
#include "rmst/parallel.hpp"

namespace rmst {

std::optional<CutConstraint> separate(const Graph& graph, std::span<const double> weights,
                                      double tol) {
  if (graph.num_vertices() < 2) return std::nullopt;
  std::vector<double> clamped(weights.begin(), weights.end());
  for (double& w : clamped) w = std::max(w, 0.0);
  MinCut cut = global_min_cut(graph, clamped);
  if (cut.value >= 1.0 - tol) return std::nullopt;
  CutConstraint out;
  out.edges = cut_edges(graph, cut.side);
  out.side = std::move(cut.side);
  out.value = cut.value;
  return out;
}

namespace {

std::vector<std::vector<EdgeId>> star_cuts(const Graph& g) {
  std::vector<std::vector<EdgeId>> cuts;
  if (g.num_vertices() < 2) return cuts;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const VertexId side[] = {v};
    cuts.push_back(cut_edges(g, side));
  }
  return cuts;
}

void check_pool(int size, int max_pool, int n, int k) {
  const int cap = max_pool > 0 ? max_pool : 10 * n * k;
  if (size > cap) {
    throw Error(ErrorCode::kNumericalFailure, "cut pool exceeded " + std::to_string(cap) + " rows");
  }
}

void check_nonnegative(bool has_negative) {
  if (has_negative) {
    throw Error(ErrorCode::kNegativeCosts, "the LP relaxation requires nonnegative costs");
  }
}

}  // namespace

MinMaxRelaxation::MinMaxRelaxation(const MinMaxInstance& inst, RelaxationOptions options)
    : inst_(inst), options_(std::move(options)) {
  check_nonnegative(inst.has_negative_costs());
  for (auto& cut : star_cuts(inst.graph())) add_cut(std::move(cut));
}

bool MinMaxRelaxation::add_cut(std::vector<EdgeId> edges) {
  if (!seen_.insert(edges).second) return false;
  pool_.push_back(std::move(edges));
  check_pool(static_cast<int>(pool_.size()), options_.max_pool, inst_.num_vertices(), inst_.num_scenarios());
  return true;
}

FeasibilityOutcome MinMaxRelaxation::solve(double budget, bool minimize_budget) {
  const Graph& g = inst_.graph();
  const int m = g.num_edges();
  const int n = g.num_vertices();

  LinearProgram lp;
  for (EdgeId e = 0; e < m; ++e) {
    bool rejected = false;
    double weight = 0.0;
    for (const CostRow& row : inst_.scenarios()) {
      rejected = rejected || row[e] > budget;
      weight += row[e];
    }
    lp.add_variable(0.0, rejected ? 0.0 : 1.0, minimize_budget ? 0.0 : weight);
  }
  const int t = minimize_budget ? lp.add_variable(0.0, budget, 1.0) : -1;
  for (const CostRow& row : inst_.scenarios()) {
    std::vector<LinearTerm> terms;
    for (EdgeId e = 0; e < m; ++e) {
      if (row[e] != 0.0) terms.push_back({e, row[e]});
    }
    if (minimize_budget) {
      terms.push_back({t, -1.0});
      lp.add_constraint(std::move(terms), Relation::kLessEqual, 0.0);
    } else {
      lp.add_constraint(std::move(terms), Relation::kLessEqual, budget);
    }
  }
  {
    std::vector<LinearTerm> terms;
    for (EdgeId e = 0; e < m; ++e) terms.push_back({e, 1.0});
    lp.add_constraint(std::move(terms), Relation::kEqual, static_cast<double>(n - 1));
  }
  auto add_row = [&](const std::vector<EdgeId>& edges) {
    std::vector<LinearTerm> terms;
    for (EdgeId e : edges) terms.push_back({e, 1.0});
    lp.add_constraint(std::move(terms), Relation::kGreaterEqual, 1.0);
  };
  for (const auto& cut : pool_) add_row(cut);

  FeasibilityOutcome outcome;
  for (int round = 0; round < options_.max_rounds; ++round) {
    LpResult res = lp_solve(lp);
    ++outcome.lp_solves;
    LpTraceRecord rec{budget, round, static_cast<int>(pool_.size()),
                      res.status == LpStatus::kOptimal, 0};
    if (res.status != LpStatus::kOptimal) {
      if (options_.trace) options_.trace(rec);
      return outcome;
    }
    std::optional<CutConstraint> cut =
        separate(g, std::span<const double>(res.x.data(), static_cast<size_t>(m)), options_.separation_tol);
    if (cut) {
      if (!add_cut(cut->edges)) {
        // The LP already carries this row; only rounding noise separates it.
        if (cut->value < 1.0 - 1e-6) {
          throw Error(ErrorCode::kNumericalFailure, "separation returned a cut already in the LP");
        }
        cut.reset();
      } else {
        add_row(pool_.back());
        ++outcome.cuts_added;
        rec.new_cuts = 1;
      }
    }
    if (options_.trace) options_.trace(rec);
    if (!cut) {
      outcome.feasible = true;
      res.x.resize(static_cast<size_t>(m));
      outcome.solution.x = std::move(res.x);
      return outcome;
    }
  }
  throw Error(ErrorCode::kNumericalFailure, "cutting-plane round limit reached");
}

TwoStageRelaxation::TwoStageRelaxation(const TwoStageInstance& inst, RelaxationOptions options)
    : inst_(inst),
      options_(std::move(options)),
      pools_(static_cast<size_t>(inst.num_scenarios())),
      seen_(static_cast<size_t>(inst.num_scenarios())) {
  check_nonnegative(inst.has_negative_costs());
  const auto stars = star_cuts(inst.graph());
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    for (const auto& cut : stars) add_cut(s, cut);
  }
}

bool TwoStageRelaxation::add_cut(int scenario, std::vector<EdgeId> edges) {
  if (!seen_[scenario].insert(edges).second) return false;
  pools_[scenario].push_back(std::move(edges));
  ++pool_size_;
  check_pool(pool_size_, options_.max_pool, inst_.num_vertices(), inst_.num_scenarios());
  return true;
}

FeasibilityOutcome TwoStageRelaxation::solve(double budget, bool minimize_budget) {
  const Graph& g = inst_.graph();
  const int m = g.num_edges();
  const int n = g.num_vertices();
  const int k = inst_.num_scenarios();
  auto second = [m](int s, EdgeId e) { return m + s * m + e; };

  LinearProgram lp;
  const CostRow& first = inst_.first_stage();
  for (EdgeId e = 0; e < m; ++e) {
    lp.add_variable(0.0, first[e] > budget ? 0.0 : 1.0, minimize_budget ? 0.0 : k * first[e]);
  }
  for (int s = 0; s < k; ++s) {
    const CostRow& row = inst_.scenario(s);
    for (EdgeId e = 0; e < m; ++e) {
      lp.add_variable(0.0, row[e] > budget ? 0.0 : 1.0, minimize_budget ? 0.0 : row[e]);
    }
  }
  const int t = minimize_budget ? lp.add_variable(0.0, budget, 1.0) : -1;
  for (int s = 0; s < k; ++s) {
    const CostRow& row = inst_.scenario(s);
    std::vector<LinearTerm> budget_terms;
    std::vector<LinearTerm> card_terms;
    for (EdgeId e = 0; e < m; ++e) {
      if (first[e] != 0.0) budget_terms.push_back({e, first[e]});
      if (row[e] != 0.0) budget_terms.push_back({second(s, e), row[e]});
      card_terms.push_back({e, 1.0});
      card_terms.push_back({second(s, e), 1.0});
    }
    if (minimize_budget) {
      budget_terms.push_back({t, -1.0});
      lp.add_constraint(std::move(budget_terms), Relation::kLessEqual, 0.0);
    } else {
      lp.add_constraint(std::move(budget_terms), Relation::kLessEqual, budget);
    }
    lp.add_constraint(std::move(card_terms), Relation::kEqual, static_cast<double>(n - 1));
  }
  auto add_row = [&](int s, const std::vector<EdgeId>& edges) {
    std::vector<LinearTerm> terms;
    for (EdgeId e : edges) {
      terms.push_back({e, 1.0});
      terms.push_back({second(s, e), 1.0});
    }
    lp.add_constraint(std::move(terms), Relation::kGreaterEqual, 1.0);
  };
  for (int s = 0; s < k; ++s) {
    for (const auto& cut : pools_[s]) add_row(s, cut);
  }

  FeasibilityOutcome outcome;
  for (int round = 0; round < options_.max_rounds; ++round) {
    LpResult res = lp_solve(lp);
    ++outcome.lp_solves;
    LpTraceRecord rec{budget, round, pool_size_, res.status == LpStatus::kOptimal, 0};
    if (res.status != LpStatus::kOptimal) {
      if (options_.trace) options_.trace(rec);
      return outcome;
    }
    std::vector<std::optional<CutConstraint>> found(static_cast<size_t>(k));
    parallel_for(k, options_.threads, [&](int s) {
      std::vector<double> combined(static_cast<size_t>(m));
      for (EdgeId e = 0; e < m; ++e) combined[e] = res.x[e] + res.x[second(s, e)];
      found[s] = separate(g, combined, options_.separation_tol);
    });
    // Cuts enter the LP in scenario order regardless of thread count.
    for (int s = 0; s < k; ++s) {
      if (!found[s]) continue;
      if (add_cut(s, found[s]->edges)) {
        add_row(s, pools_[s].back());
        ++rec.new_cuts;
      } else if (found[s]->value < 1.0 - 1e-6) {
        throw Error(ErrorCode::kNumericalFailure, "separation returned a cut already in the LP");
      }
    }
    outcome.cuts_added += rec.new_cuts;
    if (options_.trace) options_.trace(rec);
    if (rec.new_cuts == 0) {
      outcome.feasible = true;
      outcome.solution.x.assign(res.x.begin(), res.x.begin() + m);
      outcome.solution.second_stage.resize(static_cast<size_t>(k));
      for (int s = 0; s < k; ++s) {
        outcome.solution.second_stage[s].assign(res.x.begin() + second(s, 0),
                                                res.x.begin() + second(s, 0) + m);
      }
      return outcome;
    }
  }
  throw Error(ErrorCode::kNumericalFailure, "cutting-plane round limit reached");
}

namespace {

constexpr double kZero = 1e-9;

}  // namespace

double MinMaxRelaxation::certified_budget(const FractionalSolution& sol) const {
  double c = 0.0;
  for (const CostRow& row : inst_.scenarios()) {
    double used = 0.0;
    for (EdgeId e = 0; e < inst_.num_edges(); ++e) {
      used += row[e] * sol.x[e];
      if (sol.x[e] > kZero) c = std::max(c, row[e]);
    }
    c = std::max(c, used);
  }
  return c;
}

double TwoStageRelaxation::certified_budget(const FractionalSolution& sol) const {
  const CostRow& first = inst_.first_stage();
  double c = 0.0;
  double first_used = 0.0;
  for (EdgeId e = 0; e < inst_.num_edges(); ++e) {
    first_used += first[e] * sol.x[e];
    if (sol.x[e] > kZero) c = std::max(c, first[e]);
  }
  for (int s = 0; s < inst_.num_scenarios(); ++s) {
    const CostRow& row = inst_.scenario(s);
    double used = first_used;
    for (EdgeId e = 0; e < inst_.num_edges(); ++e) {
      used += row[e] * sol.second_stage[s][e];
      if (sol.second_stage[s][e] > kZero) c = std::max(c, row[e]);
    }
    c = std::max(c, used);
  }
  return c;
}

namespace {

template <typename Relaxation, typename Instance>
MinFeasibleBudget bisect(const Instance& inst, double tol_rel, const RelaxationOptions& options) {
  check_nonnegative(inst.has_negative_costs());
  Relaxation relaxation(inst, options);
  MinFeasibleBudget out;
  auto probe = [&](double budget) {
    FeasibilityOutcome o = relaxation.solve(budget);
    ++out.probes;
    out.lp_solves += o.lp_solves;
    return o;
  };

  double hi = (inst.num_vertices() - 1) * inst.max_cost();
  FeasibilityOutcome at_hi = probe(hi);
  if (!at_hi.feasible) {
    throw Error(ErrorCode::kNumericalFailure,
                "relaxation infeasible at the upper end of the search window");
  }
  if (hi > 0.0) {
    FeasibilityOutcome at_zero = probe(0.0);
    if (at_zero.feasible) {
      hi = 0.0;
      at_hi = std::move(at_zero);
    }
  }
  double lo = 0.0;
  while (hi - lo > tol_rel * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    FeasibilityOutcome o = probe(mid);
    if (o.feasible) {
      hi = mid;
      at_hi = std::move(o);
    } else {
      lo = mid;
    }
  }
  out.c_hat = hi;
  out.solution = std::move(at_hi.solution);
  if (hi > 0.0) {
    // hi overshoots the true minimum by up to the bisection tolerance. The
    // budget-minimizing point at hi certifies a tighter feasible budget c.
    FeasibilityOutcome tight = relaxation.solve(hi, true);
    ++out.probes;
    out.lp_solves += tight.lp_solves;
    if (tight.feasible) {
      const double c = relaxation.certified_budget(tight.solution);
      if (c < hi) {
        // Re-solve at c so the returned point uses the usual objective.
        FeasibilityOutcome at_c = probe(c);
        out.c_hat = c;
        out.solution = at_c.feasible ? std::move(at_c.solution) : std::move(tight.solution);
      }
    }
  }
  return out;
}

}  // namespace

MinFeasibleBudget find_min_feasible_C(const MinMaxInstance& inst, double tol_rel,
                                           const RelaxationOptions& options) {
  return bisect<MinMaxRelaxation>(inst, tol_rel, options);
}

MinFeasibleBudget find_min_feasible_C_2stage(const TwoStageInstance& inst, double tol_rel,
                                                  const RelaxationOptions& options) {
  return bisect<TwoStageRelaxation>(inst, tol_rel, options);
}

}  // namespace rmst
