#include "onto/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace onto::lp {

namespace {

class Tableau {
 public:
  Tableau(const Problem& p, double tol) : tol_(tol), n_(p.num_vars) {
    const std::size_t m = p.constraints.size();
    for (const auto& con : p.constraints) {
      if (con.coeff.size() != n_) {
        throw std::invalid_argument("lp: constraint arity does not match num_vars");
      }
    }
    // Column layout: structural | slack/surplus | artificial | rhs.
    std::size_t slack_count = 0;
    for (const auto& con : p.constraints) {
      if (con.sense != Sense::Eq) ++slack_count;
    }
    cols_ = n_ + slack_count + m;  // at most one artificial per row
    rows_.assign(m, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m, SIZE_MAX);
    artificial_start_ = n_ + slack_count;

    std::size_t slack_at = n_;
    std::size_t art_at = artificial_start_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& con = p.constraints[i];
      const double flip = con.rhs < 0.0 ? -1.0 : 1.0;
      Sense sense = con.sense;
      if (flip < 0.0 && sense != Sense::Eq) {
        sense = sense == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
      }
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip * con.coeff[j];
      rows_[i][cols_] = flip * con.rhs;

      if (sense == Sense::LessEq) {
        rows_[i][slack_at] = 1.0;
        basis_[i] = slack_at++;
      } else if (sense == Sense::GreaterEq) {
        rows_[i][slack_at++] = -1.0;
        rows_[i][art_at] = 1.0;
        basis_[i] = art_at++;
      } else {
        rows_[i][art_at] = 1.0;
        basis_[i] = art_at++;
      }
    }
    num_artificials_ = art_at - artificial_start_;
  }

  Status optimize() {
    // Phase 1: drive the artificial variables to zero.
    if (num_artificials_ > 0) {
      std::vector<double> phase1(cols_, 0.0);
      for (std::size_t j = artificial_start_; j < artificial_start_ + num_artificials_; ++j) {
        phase1[j] = -1.0;
      }
      if (!run(phase1, /*allow_artificials=*/true)) {
        throw std::logic_error("lp: phase 1 cannot be unbounded");
      }
      if (objective_value(phase1) < -tol_) return Status::Infeasible;
      pivot_out_artificials();
    }
    return Status::Optimal;
  }

  /// Maximizes the structural objective. Returns false when unbounded.
  bool maximize(const std::vector<double>& structural_obj) {
    std::vector<double> obj(cols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) obj[j] = structural_obj[j];
    return run(obj, /*allow_artificials=*/false);
  }

  double objective_value(const std::vector<double>& obj) const {
    double v = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < cols_) v += obj[basis_[i]] * rows_[i][cols_];
    }
    return v;
  }

  std::vector<double> structural_solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n_) x[basis_[i]] = rows_[i][cols_];
    }
    return x;
  }

 private:
  bool is_artificial(std::size_t col) const {
    return col >= artificial_start_ && col < artificial_start_ + num_artificials_;
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = rows_[row];
    const double inv = 1.0 / pr[col];
    for (auto& v : pr) v *= inv;
    pr[col] = 1.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row) continue;
      const double factor = rows_[i][col];
      if (std::abs(factor) <= 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) rows_[i][j] -= factor * pr[j];
      rows_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  // Bland's rule: entering = lowest-index improving column, leaving = lowest
  // basis index among minimum-ratio rows. Guarantees termination.
  bool run(const std::vector<double>& obj, bool allow_artificials) {
    const std::size_t iteration_cap = 2000 + 200 * (rows_.size() + cols_);
    for (std::size_t iter = 0; iter < iteration_cap; ++iter) {
      std::vector<double> dual(rows_.size());
      for (std::size_t i = 0; i < rows_.size(); ++i) dual[i] = obj[basis_[i]];

      std::size_t entering = SIZE_MAX;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificials && is_artificial(j)) continue;
        double reduced = obj[j];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          if (dual[i] != 0.0) reduced -= dual[i] * rows_[i][j];
        }
        if (reduced > tol_) {
          entering = j;
          break;
        }
      }
      if (entering == SIZE_MAX) return true;  // optimal

      std::size_t leaving = SIZE_MAX;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][entering];
        if (a <= tol_) continue;
        const double ratio = rows_[i][cols_] / a;
        if (leaving == SIZE_MAX || ratio < best_ratio - tol_) {
          best_ratio = ratio;
          leaving = i;
        } else if (ratio <= best_ratio + tol_ && basis_[i] < basis_[leaving]) {
          best_ratio = std::min(best_ratio, ratio);
          leaving = i;
        }
      }
      if (leaving == SIZE_MAX) return false;  // unbounded
      pivot(leaving, entering);
    }
    throw std::runtime_error("lp: iteration cap exceeded");
  }

  void pivot_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!is_artificial(basis_[i])) continue;
      std::size_t col = SIZE_MAX;
      for (std::size_t j = 0; j < artificial_start_; ++j) {
        if (std::abs(rows_[i][j]) > tol_) {
          col = j;
          break;
        }
      }
      // A fully zero row is redundant; its artificial stays basic at zero and
      // is barred from re-entering, which keeps it inert.
      if (col != SIZE_MAX) pivot(i, col);
    }
  }

  double tol_;
  std::size_t n_;
  std::size_t cols_ = 0;
  std::size_t artificial_start_ = 0;
  std::size_t num_artificials_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem, double tol) {
  if (problem.maximize.size() != problem.num_vars) {
    throw std::invalid_argument("lp: objective arity does not match num_vars");
  }
  Tableau tableau(problem, tol);
  if (tableau.optimize() == Status::Infeasible) {
    return Solution{Status::Infeasible, 0.0, {}};
  }
  if (!tableau.maximize(problem.maximize)) {
    return Solution{Status::Unbounded, 0.0, {}};
  }
  Solution sol;
  sol.status = Status::Optimal;
  sol.x = tableau.structural_solution();
  sol.objective = 0.0;
  for (std::size_t j = 0; j < problem.num_vars; ++j) {
    sol.objective += problem.maximize[j] * sol.x[j];
  }
  return sol;
}

}  // namespace onto::lp
