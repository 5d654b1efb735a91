#pragma once

#include <cstddef>
#include <vector>

namespace onto::lp {

enum class Sense { LessEq, Eq, GreaterEq };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<double> coeff;  // length num_vars
  Sense sense = Sense::LessEq;
  double rhs = 0.0;
};

/// maximize c.x  subject to the constraints and x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> maximize;  // c, length num_vars
  std::vector<Constraint> constraints;
};

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> x;  // structural variables, empty unless Optimal
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule.
Solution solve(const Problem& problem, double tol = 1e-9);

}  // namespace onto::lp
