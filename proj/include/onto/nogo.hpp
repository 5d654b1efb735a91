#pragma once

#include "onto/composite.hpp"
#include "onto/lp.hpp"
#include "onto/ontology.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace onto {

/// Overlap budget for the machine scenario: a fraction omega of the quantum
/// overlap q_overlap is epistemic overlap, pinned to the local bound; the
/// rest may reach the algebraic maximum.
struct BudgetScenario {
  double omega = 0.0;
  double q_overlap = 0.5;
  double local_bound = 2.0;
  double algebraic_max = 4.0;
};

void validate(const BudgetScenario& s);  // hard error on invariant violation

/// Maximal Mermin expectation achievable at the given overlap:
///   local_bound * omega * q + algebraic_max * (1 - omega * q).
double mermin_budget(const BudgetScenario& s);

struct RequiredOverlap {
  double omega = 0.0;   // unclamped solution of mermin_budget(omega) == target
  bool feasible = false;  // true iff omega lies in [0,1]
};

/// Inverts the budget: the unique omega with mermin_budget == target,
/// infeasible when it falls outside [0,1]. q_overlap == 0 is a defined error
/// (the budget no longer depends on omega).
RequiredOverlap solve_required_overlap(double target, double q_overlap,
                                       double local_bound = 2.0,
                                       double algebraic_max = 4.0);

/// Mass-maximization LP over a finite party-A ontic space: points inside
/// support(|0>) contribute at most local_bound per unit mass, points outside
/// at most algebraic_max, and the mass-weighted contributions must average to
/// the target expectation.
struct OverlapLP {
  std::vector<bool> inside;
  std::vector<double> bound;
  double target = 4.0;

  static OverlapLP uniform(int inside_points, int outside_points, double target,
                           double local_bound = 2.0, double algebraic_max = 4.0);
};

struct OverlapCertificate {
  std::vector<double> mass;
  std::vector<double> contribution;
};

struct OverlapLPResult {
  lp::Status status = lp::Status::Infeasible;
  double overlap_mass = 0.0;  // optimal mass inside support(|0>)
  OverlapCertificate certificate;
};

OverlapLPResult max_overlap_lp(const OverlapLP& problem);

struct SweepRow {
  double target = 0.0;
  double lp_mass = 0.0;
  double closed_form_mass = 0.0;
};

/// LP vs closed form min(1, (max - target)/(max - local)) over a target grid.
std::vector<SweepRow> lp_closed_form_sweep(double from, double to, double step,
                                           int inside_points = 4,
                                           int outside_points = 12);

enum class JointKind { Product, PerfectlyCorrelated };

/// Finite toy member of the model family: party A splits into an overlap
/// block (inside support(|0>), carrying mu(.|+) mass w) and a disjoint block
/// mapped to nonlocal outputs assigned the algebraic maximum 4.
struct ToyExperiment {
  MachineDynamics dynamics;
  std::vector<double> mu_plus;
  std::vector<double> mu_zero;
  LocalResponses responses;
  std::map<int, double> nonlocal_values;
  int overlap_size = 0;
  double w = 0.0;
};

ToyExperiment make_toy_experiment(double w, int n = 16, int k = 4, int nb = 2,
                                  int nc = 2);

struct ThoughtExperimentReport {
  double w = 0.0;
  double omega = 0.0;      // w / q_overlap
  double q_overlap = 0.5;
  double achieved = 0.0;   // maximal Mermin expectation, full iteration
  double target = 4.0;
  double budget = 0.0;     // mermin_budget at omega
  double marginal_residual = 0.0;  // joint marginal vs mu(.|+)
  double mass_residual = 0.0;      // |sum mu(.|+) - 1|
  bool reproduces = false;         // achieved == 4 within 1e-12
  JointKind joint = JointKind::Product;
};

/// Feeds |+> into the machine at the ontic level and evaluates the maximal
/// Mermin expectation by full iteration over the joint input distribution.
/// Gamma violations make the family member invalid (hard error).
ThoughtExperimentReport evaluate_experiment(const ToyExperiment& exp, JointKind joint);

ThoughtExperimentReport run_thought_experiment(double w,
                                               JointKind joint = JointKind::Product,
                                               int n = 16, int k = 4);

struct PairCheckResult {
  std::string psi, phi;
  double q_overlap = 0.0;
  double required_omega = 0.0;
  bool accepted = false;
  std::string diagnostic;
};

/// For each pair with |<psi|phi>|^2 == 1/2 (verified to 1e-12), the overlap
/// forced by demanding the maximal violation 4. Pairs failing the overlap
/// precondition are rejected with a diagnostic, not an error.
std::vector<PairCheckResult> general_pair_check(
    const std::vector<std::pair<LabeledKet, LabeledKet>>& pairs);

/// Twelve labeled pairs with squared overlap 1/2, including complex-phase
/// members.
std::vector<std::pair<LabeledKet, LabeledKet>> half_overlap_pair_family();

}  // namespace onto
