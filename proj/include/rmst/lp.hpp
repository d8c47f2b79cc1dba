#pragma once

#include <limits>
#include <vector>

namespace rmst {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearTerm {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

// minimize objective . x  subject to  constraints,  lower <= x <= upper.
struct LinearProgram {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> objective;
  std::vector<Constraint> constraints;

  int num_variables() const { return static_cast<int>(objective.size()); }

  int add_variable(double lo, double hi, double cost) {
    lower.push_back(lo);
    upper.push_back(hi);
    objective.push_back(cost);
    return num_variables() - 1;
  }

  void add_constraint(std::vector<LinearTerm> terms, Relation relation, double rhs) {
    constraints.push_back(Constraint{std::move(terms), relation, rhs});
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  // 0 picks a cap proportional to the tableau size.
  int max_pivots = 0;
};

// Dense bounded-variable two-phase primal simplex. Dantzig pricing with a
// switch to Bland's rule during degenerate stalls, so results are
// deterministic. Throws kNumericalFailure when the pivot cap is hit or the
// final point violates a constraint by more than 1e-6.
LpResult lp_solve(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace rmst
