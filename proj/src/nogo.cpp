#include "onto/nogo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onto {

void validate(const BudgetScenario& s) {
  if (!(s.omega >= 0.0 && s.omega <= 1.0)) {
    throw std::invalid_argument("budget: omega outside [0,1]");
  }
  if (!(s.q_overlap >= 0.0 && s.q_overlap <= 1.0)) {
    throw std::invalid_argument("budget: q_overlap outside [0,1]");
  }
  if (!(s.local_bound < s.algebraic_max)) {
    throw std::invalid_argument("budget: local_bound must be below algebraic_max");
  }
}

double mermin_budget(const BudgetScenario& s) {
  validate(s);
  const double constrained = s.omega * s.q_overlap;
  return s.local_bound * constrained + s.algebraic_max * (1.0 - constrained);
}

RequiredOverlap solve_required_overlap(double target, double q_overlap,
                                       double local_bound, double algebraic_max) {
  if (!(local_bound < algebraic_max)) {
    throw std::invalid_argument("solve_required_overlap: local_bound must be below algebraic_max");
  }
  if (q_overlap < 0.0 || q_overlap > 1.0) {
    throw std::invalid_argument("solve_required_overlap: q_overlap outside [0,1]");
  }
  if (q_overlap == 0.0) {
    throw std::domain_error(
        "solve_required_overlap: q_overlap = 0, budget does not depend on omega");
  }
  RequiredOverlap r;
  r.omega = (algebraic_max - target) / ((algebraic_max - local_bound) * q_overlap);
  r.feasible = r.omega >= -1e-12 && r.omega <= 1.0 + 1e-12;
  return r;
}

OverlapLP OverlapLP::uniform(int inside_points, int outside_points, double target,
                             double local_bound, double algebraic_max) {
  if (inside_points < 1 || outside_points < 1) {
    throw std::invalid_argument("OverlapLP: need at least one point per region");
  }
  OverlapLP p;
  p.target = target;
  p.inside.assign(inside_points, true);
  p.inside.resize(inside_points + outside_points, false);
  p.bound.assign(inside_points, local_bound);
  p.bound.resize(inside_points + outside_points, algebraic_max);
  return p;
}

OverlapLPResult max_overlap_lp(const OverlapLP& problem) {
  const std::size_t n = problem.inside.size();
  if (problem.bound.size() != n || n == 0) {
    throw std::invalid_argument("max_overlap_lp: inside/bound size mismatch");
  }
  for (double b : problem.bound) {
    if (b <= 0.0) throw std::invalid_argument("max_overlap_lp: bounds must be positive");
  }

  // Variables: mass m_i, then y+_i, y-_i with y_i = y+ - y- the mass-weighted
  // Mermin contribution of point i, |y_i| <= bound_i * m_i.
  lp::Problem p;
  p.num_vars = 3 * n;
  p.maximize.assign(p.num_vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.inside[i]) p.maximize[i] = 1.0;
  }

  lp::Constraint total_mass;
  total_mass.coeff.assign(p.num_vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) total_mass.coeff[i] = 1.0;
  total_mass.sense = lp::Sense::Eq;
  total_mass.rhs = 1.0;
  p.constraints.push_back(std::move(total_mass));

  lp::Constraint reproduce;
  reproduce.coeff.assign(p.num_vars, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    reproduce.coeff[n + i] = 1.0;
    reproduce.coeff[2 * n + i] = -1.0;
  }
  reproduce.sense = lp::Sense::Eq;
  reproduce.rhs = problem.target;
  p.constraints.push_back(std::move(reproduce));

  for (std::size_t i = 0; i < n; ++i) {
    lp::Constraint upper;  //  y_i - bound_i m_i <= 0
    upper.coeff.assign(p.num_vars, 0.0);
    upper.coeff[n + i] = 1.0;
    upper.coeff[2 * n + i] = -1.0;
    upper.coeff[i] = -problem.bound[i];
    upper.sense = lp::Sense::LessEq;
    upper.rhs = 0.0;
    p.constraints.push_back(std::move(upper));

    lp::Constraint lower;  // -y_i - bound_i m_i <= 0
    lower.coeff.assign(p.num_vars, 0.0);
    lower.coeff[n + i] = -1.0;
    lower.coeff[2 * n + i] = 1.0;
    lower.coeff[i] = -problem.bound[i];
    lower.sense = lp::Sense::LessEq;
    lower.rhs = 0.0;
    p.constraints.push_back(std::move(lower));
  }

  const lp::Solution sol = lp::solve(p);
  OverlapLPResult result;
  result.status = sol.status;
  if (sol.status != lp::Status::Optimal) return result;

  result.overlap_mass = sol.objective;
  result.certificate.mass.resize(n);
  result.certificate.contribution.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = sol.x[i];
    const double y = sol.x[n + i] - sol.x[2 * n + i];
    result.certificate.mass[i] = m;
    result.certificate.contribution[i] = m > 1e-12 ? y / m : 0.0;
  }
  return result;
}

std::vector<SweepRow> lp_closed_form_sweep(double from, double to, double step,
                                           int inside_points, int outside_points) {
  if (step <= 0.0 || to < from) {
    throw std::invalid_argument("lp_closed_form_sweep: bad range");
  }
  std::vector<SweepRow> rows;
  for (int s = 0;; ++s) {
    double target = from + s * step;
    if (target > to + step * 0.5) break;
    if (std::abs(target - to) < step * 1e-6) target = to;  // snap the endpoint
    SweepRow row;
    row.target = target;
    row.closed_form_mass =
        std::min(1.0, std::max(0.0, (4.0 - target) / 2.0));
    const auto lp = max_overlap_lp(
        OverlapLP::uniform(inside_points, outside_points, target));
    if (lp.status != lp::Status::Optimal) {
      throw std::runtime_error("lp_closed_form_sweep: LP unexpectedly not optimal");
    }
    row.lp_mass = lp.overlap_mass;
    rows.push_back(row);
  }
  return rows;
}

ToyExperiment make_toy_experiment(double w, int n, int k, int nb, int nc) {
  if (!(w >= 0.0 && w <= 0.5)) {
    // w is mass of mu(.|+) on support(|0>); it cannot exceed the quantum
    // overlap 1/2 without breaking the overlap inequality.
    throw std::invalid_argument("make_toy_experiment: w must lie in [0, 0.5]");
  }
  if (k < 1 || n <= k || nb < 1 || nc < 1) {
    throw std::invalid_argument("make_toy_experiment: need n > k >= 1 and nb, nc >= 1");
  }

  ToyExperiment exp;
  exp.w = w;
  exp.overlap_size = k;

  exp.mu_plus.assign(n, 0.0);
  for (int i = 0; i < k; ++i) exp.mu_plus[i] = w / k;
  for (int i = k; i < n; ++i) exp.mu_plus[i] = (1.0 - w) / (n - k);
  exp.mu_zero.assign(n, 0.0);
  for (int i = 0; i < k; ++i) exp.mu_zero[i] = 1.0 / k;

  auto& dyn = exp.dynamics;
  dyn = MachineDynamics::identity(n, nb, nc, n - k);
  for (int i = 0; i < k; ++i) dyn.a_in_zero[i] = true;
  for (int i = 0; i < n; ++i) dyn.a_in_plus[i] = exp.mu_plus[i] > 0.0;
  dyn.b_in_zero.assign(nb, true);
  dyn.c_in_zero.assign(nc, true);
  // Overlap-block inputs stay local (already known to land in supp(|0>)^3);
  // disjoint-block inputs go to the nonlocal sector, one tag per point.
  for (int a = k; a < n; ++a) {
    for (int b = 0; b < nb; ++b) {
      for (int c = 0; c < nc; ++c) {
        dyn.local_out[dyn.local_index({a, b, c})] = NonlocalTag{a - k};
      }
    }
  }

  exp.responses.a.outcomes.assign(n, {1, 1});
  exp.responses.b.outcomes.assign(nb, {1, 1});
  exp.responses.c.outcomes.assign(nc, {1, 1});
  for (int t = 0; t < n - k; ++t) exp.nonlocal_values[t] = 4.0;
  return exp;
}

ThoughtExperimentReport evaluate_experiment(const ToyExperiment& exp, JointKind joint) {
  const auto violations = check_gamma(exp.dynamics);
  if (!violations.empty()) {
    throw std::runtime_error("evaluate_experiment: dynamics violate [Gamma] at " +
                             std::to_string(violations.size()) + " input(s)");
  }

  const auto& dyn = exp.dynamics;
  const int n = dyn.na, nb = dyn.nb, nc = dyn.nc;
  const double product_weight = 1.0 / (static_cast<double>(nb) * nc);

  // Nested accumulation (c innermost) keeps the two joint forms bit-identical:
  // the (b,c)-conditional sums are exact for both, and the outer sum then runs
  // over the same term sequence.
  double achieved = 0.0;
  double marginal_residual = 0.0;
  double mass = 0.0;
  for (int a = 0; a < n; ++a) {
    double conditional_mermin = 0.0;
    double conditional_mass = 0.0;
    for (int b = 0; b < nb; ++b) {
      double inner_mermin = 0.0;
      double inner_mass = 0.0;
      for (int c = 0; c < nc; ++c) {
        double cond = 0.0;
        if (joint == JointKind::Product) {
          cond = product_weight;
        } else if (b == a % nb && c == a % nc) {
          cond = 1.0;
        }
        if (cond == 0.0) continue;
        const CompositeOnticState out = dyn.apply(LocalTriple{a, b, c});
        inner_mermin += cond * composite_mermin(out, exp.responses, exp.nonlocal_values);
        inner_mass += cond;
      }
      conditional_mermin += inner_mermin;
      conditional_mass += inner_mass;
    }
    achieved += exp.mu_plus[a] * conditional_mermin;
    marginal_residual = std::max(
        marginal_residual,
        std::abs(exp.mu_plus[a] * conditional_mass - exp.mu_plus[a]));
    mass += exp.mu_plus[a];
  }

  ThoughtExperimentReport report;
  report.w = exp.w;
  report.q_overlap = 0.5;
  report.omega = exp.w / report.q_overlap;
  report.achieved = achieved;
  report.target = 4.0;
  report.budget = mermin_budget(BudgetScenario{report.omega, report.q_overlap});
  report.marginal_residual = marginal_residual;
  report.mass_residual = std::abs(mass - 1.0);
  report.reproduces = std::abs(achieved - 4.0) <= 1e-12;
  report.joint = joint;
  return report;
}

ThoughtExperimentReport run_thought_experiment(double w, JointKind joint, int n, int k) {
  return evaluate_experiment(make_toy_experiment(w, n, k), joint);
}

std::vector<PairCheckResult> general_pair_check(
    const std::vector<std::pair<LabeledKet, LabeledKet>>& pairs) {
  std::vector<PairCheckResult> results;
  results.reserve(pairs.size());
  for (const auto& [psi, phi] : pairs) {
    PairCheckResult r;
    r.psi = psi.label;
    r.phi = phi.label;
    r.q_overlap = fidelity(psi.ket, phi.ket);
    if (std::abs(r.q_overlap - 0.5) > kExactTol) {
      r.accepted = false;
      r.diagnostic = "overlap precondition failed: |<psi|phi>|^2 = " +
                     std::to_string(r.q_overlap) + " != 1/2";
    } else {
      const auto required = solve_required_overlap(4.0, 0.5);
      r.accepted = required.feasible;
      r.required_omega = required.omega;
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<std::pair<LabeledKet, LabeledKet>> half_overlap_pair_family() {
  const LabeledKet zero{"0", ket_zero()};
  const LabeledKet one{"1", ket_one()};
  const LabeledKet plus{"+", ket_plus()};
  const LabeledKet minus{"-", ket_minus()};
  const LabeledKet plus_i{"i", ket_plus_i()};
  const LabeledKet minus_i{"-i", ket_minus_i()};
  const LabeledKet phase45{"phase45",
                           qubit_state(std::numbers::pi / 2, std::numbers::pi / 4)};

  return {
      {zero, plus},    {one, minus},   {zero, minus},    {one, plus},
      {zero, plus_i},  {zero, minus_i}, {one, plus_i},   {plus, plus_i},
      {minus, plus_i}, {plus, minus_i}, {zero, phase45}, {phase45, one},
  };
}

}  // namespace onto
