#include "rmst/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmst/error.hpp"

namespace rmst {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ColumnKind { kStructural, kSlack, kArtificial };

class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const LpOptions& options)
      : lp_(lp), opt_(options) {}

  LpResult solve() {
    if (!build()) return LpResult{LpStatus::kInfeasible, {}, 0.0, 0};

    // Phase 1: drive the artificials to zero.
    std::vector<double> phase1(static_cast<size_t>(cols_), 0.0);
    for (int j = 0; j < cols_; ++j) {
      if (kind_[j] == ColumnKind::kArtificial) phase1[j] = 1.0;
    }
    price(phase1);
    if (!iterate()) {
      // Phase 1 is bounded below by zero; unboundedness means breakdown.
      throw Error(ErrorCode::kNumericalFailure, "phase 1 reported unbounded");
    }
    double infeasibility = 0.0;
    for (int i = 0; i < rows_; ++i) {
      if (kind_[basis_[i]] == ColumnKind::kArtificial) infeasibility += beta_[i];
    }
    if (infeasibility > opt_.feasibility_tol) return LpResult{LpStatus::kInfeasible, {}, 0.0, pivots_};
    evict_artificials();

    // Phase 2.
    std::vector<double> phase2(static_cast<size_t>(cols_), 0.0);
    for (int j = 0; j < num_structural_; ++j) phase2[j] = cost_[j];
    price(phase2);
    if (!iterate()) return LpResult{LpStatus::kUnbounded, {}, 0.0, pivots_};

    LpResult result;
    result.status = LpStatus::kOptimal;
    result.pivots = pivots_;
    result.x = extract();
    result.objective = 0.0;
    for (int j = 0; j < lp_.num_variables(); ++j) result.objective += lp_.objective[j] * result.x[j];
    verify(result.x);
    return result;
  }

 private:
  // Returns false when some row is trivially infeasible.
  bool build() {
    const int n = lp_.num_variables();
    if (static_cast<int>(lp_.lower.size()) != n || static_cast<int>(lp_.upper.size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "bound vectors must match the variable count");
    }
    // Structural columns: only variables with a nonempty range.
    column_of_var_.assign(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
      const double lo = lp_.lower[v];
      const double hi = lp_.upper[v];
      if (!std::isfinite(lo)) throw Error(ErrorCode::kInvalidArgument, "lower bounds must be finite");
      if (hi < lo - opt_.feasibility_tol) return false;
      if (hi - lo > 0.0) {
        column_of_var_[v] = static_cast<int>(var_of_column_.size());
        var_of_column_.push_back(v);
      }
    }
    num_structural_ = static_cast<int>(var_of_column_.size());

    rows_ = static_cast<int>(lp_.constraints.size());
    // Row data after shifting variables by their lower bounds.
    std::vector<std::vector<std::pair<int, double>>> row_terms(static_cast<size_t>(rows_));
    std::vector<double> rhs(static_cast<size_t>(rows_));
    std::vector<double> slack_sign(static_cast<size_t>(rows_), 0.0);
    int num_slack = 0;
    for (int i = 0; i < rows_; ++i) {
      const Constraint& c = lp_.constraints[i];
      double b = c.rhs;
      for (const LinearTerm& t : c.terms) {
        if (t.var < 0 || t.var >= n) throw Error(ErrorCode::kInvalidArgument, "constraint references unknown variable");
        b -= t.coef * lp_.lower[t.var];
        if (column_of_var_[t.var] >= 0 && t.coef != 0.0) {
          row_terms[i].push_back({column_of_var_[t.var], t.coef});
        }
      }
      rhs[i] = b;
      if (c.relation == Relation::kLessEqual) slack_sign[i] = 1.0;
      if (c.relation == Relation::kGreaterEqual) slack_sign[i] = -1.0;
      if (slack_sign[i] != 0.0) ++num_slack;
    }

    // Columns: structural, slack, then artificial (added per row on demand).
    const int first_slack = num_structural_;
    cols_ = num_structural_ + num_slack;
    std::vector<int> slack_col(static_cast<size_t>(rows_), -1);
    {
      int next = first_slack;
      for (int i = 0; i < rows_; ++i) {
        if (slack_sign[i] != 0.0) slack_col[i] = next++;
      }
    }
    std::vector<double> row_sign(static_cast<size_t>(rows_), 1.0);
    std::vector<char> needs_artificial(static_cast<size_t>(rows_), 0);
    for (int i = 0; i < rows_; ++i) {
      if (rhs[i] < 0.0) row_sign[i] = -1.0;
      const bool slack_basic = slack_col[i] >= 0 && slack_sign[i] * row_sign[i] > 0.0;
      if (!slack_basic) {
        needs_artificial[i] = 1;
        ++cols_;
      }
    }

    tableau_.assign(static_cast<size_t>(rows_), std::vector<double>(static_cast<size_t>(cols_), 0.0));
    beta_.assign(static_cast<size_t>(rows_), 0.0);
    basis_.assign(static_cast<size_t>(rows_), -1);
    upper_.assign(static_cast<size_t>(cols_), kInf);
    at_upper_.assign(static_cast<size_t>(cols_), 0);
    is_basic_.assign(static_cast<size_t>(cols_), 0);
    kind_.assign(static_cast<size_t>(cols_), ColumnKind::kSlack);
    cost_.assign(static_cast<size_t>(cols_), 0.0);

    for (int j = 0; j < num_structural_; ++j) {
      const int v = var_of_column_[j];
      kind_[j] = ColumnKind::kStructural;
      upper_[j] = lp_.upper[v] - lp_.lower[v];
      cost_[j] = lp_.objective[v];
    }
    int next_art = num_structural_ + num_slack;
    for (int i = 0; i < rows_; ++i) {
      std::vector<double>& row = tableau_[i];
      for (auto [col, coef] : row_terms[i]) row[col] += row_sign[i] * coef;
      if (slack_col[i] >= 0) row[slack_col[i]] = row_sign[i] * slack_sign[i];
      beta_[i] = row_sign[i] * rhs[i];
      if (needs_artificial[i]) {
        kind_[next_art] = ColumnKind::kArtificial;
        row[next_art] = 1.0;
        basis_[i] = next_art++;
      } else {
        basis_[i] = slack_col[i];
      }
      is_basic_[basis_[i]] = 1;
    }
    reduced_.assign(static_cast<size_t>(cols_), 0.0);
    max_pivots_ = opt_.max_pivots > 0 ? opt_.max_pivots : 200 * (rows_ + cols_) + 1000;
    return true;
  }

  void price(const std::vector<double>& costs) {
    for (int j = 0; j < cols_; ++j) {
      double d = costs[j];
      for (int i = 0; i < rows_; ++i) d -= costs[basis_[i]] * tableau_[i][j];
      reduced_[j] = is_basic_[j] ? 0.0 : d;
    }
  }

  int choose_entering(bool bland) const {
    int best = -1;
    double best_score = 0.0;
    for (int j = 0; j < cols_; ++j) {
      if (is_basic_[j]) continue;
      const double d = reduced_[j];
      double score = 0.0;
      if (!at_upper_[j] && upper_[j] > 0.0 && d < -opt_.optimality_tol) score = -d;
      if (at_upper_[j] && d > opt_.optimality_tol) score = d;
      if (score <= 0.0) continue;
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Runs simplex iterations on the current objective. Returns false if
  // the objective is unbounded.
  bool iterate() {
    int degenerate_streak = 0;
    while (true) {
      const bool bland = degenerate_streak > 25;
      const int enter = choose_entering(bland);
      if (enter < 0) return true;
      if (++pivots_ > max_pivots_) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex pivot cap of " + std::to_string(max_pivots_) + " exceeded");
      }
      const double dir = at_upper_[enter] ? -1.0 : 1.0;

      double step = upper_[enter];
      int leave_row = -1;
      bool leave_to_upper = false;
      double leave_alpha = 0.0;
      for (int i = 0; i < rows_; ++i) {
        const double alpha = dir * tableau_[i][enter];
        double limit = kInf;
        bool to_upper = false;
        if (alpha > opt_.pivot_tol) {
          limit = std::max(beta_[i], 0.0) / alpha;
        } else if (alpha < -opt_.pivot_tol && std::isfinite(upper_[basis_[i]])) {
          limit = std::max(upper_[basis_[i]] - beta_[i], 0.0) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        bool take = false;
        if (limit < step - 1e-12) {
          take = true;
        } else if (limit <= step + 1e-12 && leave_row >= 0) {
          take = bland ? basis_[i] < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
        } else if (limit <= step + 1e-12 && leave_row < 0 && limit < step) {
          take = true;
        }
        if (take) {
          step = limit;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(step)) return false;

      degenerate_streak = step <= 1e-12 ? degenerate_streak + 1 : 0;
      for (int i = 0; i < rows_; ++i) beta_[i] -= dir * step * tableau_[i][enter];

      if (leave_row < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      const double entering_value = at_upper_[enter] ? upper_[enter] - step : step;
      const int leaving = basis_[leave_row];
      pivot(leave_row, enter);
      beta_[leave_row] = entering_value;
      is_basic_[leaving] = 0;
      at_upper_[leaving] = leave_to_upper;
      at_upper_[enter] = 0;
      for (int i = 0; i < rows_; ++i) {
        if (beta_[i] < 0.0 && beta_[i] > -1e-11) beta_[i] = 0.0;
      }
    }
  }

  void pivot(int r, int c) {
    std::vector<double>& prow = tableau_[r];
    const double inv = 1.0 / prow[c];
    for (double& v : prow) v *= inv;
    prow[c] = 1.0;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = tableau_[i][c];
      if (f == 0.0) continue;
      std::vector<double>& row = tableau_[i];
      for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[c] = 0.0;
    }
    const double f = reduced_[c];
    if (f != 0.0) {
      for (int j = 0; j < cols_; ++j) reduced_[j] -= f * prow[j];
    }
    reduced_[c] = 0.0;
    basis_[r] = c;
    is_basic_[c] = 1;
  }

  void evict_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (kind_[basis_[i]] != ColumnKind::kArtificial) continue;
      int best = -1;
      for (int j = 0; j < cols_; ++j) {
        if (is_basic_[j] || kind_[j] == ColumnKind::kArtificial) continue;
        if (std::abs(tableau_[i][j]) > 1e-7 &&
            (best < 0 || std::abs(tableau_[i][j]) > std::abs(tableau_[i][best]))) {
          best = j;
        }
      }
      if (best < 0) continue;  // redundant row; the artificial stays basic at zero
      const double value = at_upper_[best] ? upper_[best] : 0.0;
      const int leaving = basis_[i];
      // Degenerate exchange: the artificial sits at ~0, so other rows keep
      // their values once the residual is folded in.
      const double residual = beta_[i];
      const double a = tableau_[i][best];
      for (int k = 0; k < rows_; ++k) {
        if (k != i) beta_[k] -= tableau_[k][best] * (residual / a);
      }
      pivot(i, best);
      beta_[i] = value + residual / a;
      is_basic_[leaving] = 0;
      at_upper_[leaving] = 0;
      at_upper_[best] = 0;
    }
    for (int j = 0; j < cols_; ++j) {
      if (kind_[j] == ColumnKind::kArtificial) upper_[j] = 0.0;
    }
  }

  std::vector<double> extract() const {
    std::vector<double> col_value(static_cast<size_t>(cols_), 0.0);
    for (int j = 0; j < cols_; ++j) {
      if (!is_basic_[j] && at_upper_[j]) col_value[j] = upper_[j];
    }
    for (int i = 0; i < rows_; ++i) col_value[basis_[i]] = beta_[i];
    std::vector<double> x(lp_.lower);
    for (int j = 0; j < num_structural_; ++j) {
      const int v = var_of_column_[j];
      x[v] = std::clamp(lp_.lower[v] + col_value[j], lp_.lower[v], lp_.upper[v]);
    }
    return x;
  }

  void verify(const std::vector<double>& x) const {
    for (const Constraint& c : lp_.constraints) {
      double lhs = 0.0;
      double scale = 1.0;
      for (const LinearTerm& t : c.terms) {
        lhs += t.coef * x[t.var];
        scale = std::max(scale, std::abs(t.coef * x[t.var]));
      }
      double violation = 0.0;
      if (c.relation != Relation::kGreaterEqual) violation = std::max(violation, lhs - c.rhs);
      if (c.relation != Relation::kLessEqual) violation = std::max(violation, c.rhs - lhs);
      if (violation > 1e-6 * std::max(scale, std::abs(c.rhs))) {
        throw Error(ErrorCode::kNumericalFailure,
                    "simplex solution violates a constraint by " + std::to_string(violation));
      }
    }
  }

  const LinearProgram& lp_;
  LpOptions opt_;
  std::vector<int> column_of_var_;
  std::vector<int> var_of_column_;
  int num_structural_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<double>> tableau_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<double> upper_;
  std::vector<char> at_upper_;
  std::vector<char> is_basic_;
  std::vector<ColumnKind> kind_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  int pivots_ = 0;
  int max_pivots_ = 0;
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp, const LpOptions& options) {
  return BoundedSimplex(lp, options).solve();
}

}  // namespace rmst
