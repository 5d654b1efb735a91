#pragma once

#include "onto/qcore.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace onto {

// Default numeric floor deciding membership of the ontic support
// ("density > 0" needs a positivity threshold on a grid).
inline constexpr double kSupportThreshold = 1e-12;

// An omega ratio above 1 by more than this flags a broken model rather than
// quadrature noise.
inline constexpr double kOmegaConsistencyTol = 2e-3;

/// Finite ontic state space. Sphere-discretized spaces carry a unit Bloch
/// direction per point; abstract spaces leave `directions` empty. Weights are
/// the integration measure (cell solid angles for sphere grids, 1 otherwise).
struct OnticSpace {
  std::vector<double> weights;
  std::vector<Eigen::Vector3d> directions;
  std::vector<std::string> labels;  // optional; empty means "use the index"

  std::size_t size() const { return weights.size(); }
  bool has_directions() const { return !directions.empty(); }
  double total_weight() const;
};

/// Probability density over the ontic space, relative to the point weights:
/// sum_i density[i] * weight[i] = 1.
struct EpistemicState {
  std::string label;            // the quantum preparation it represents
  std::vector<double> density;  // >= 0 per point
  double raw_mass = 1.0;        // quadrature mass before normalization
};

/// Outcome probabilities per ontic point; rows sum to 1 at every point.
struct ResponseFunction {
  std::vector<std::string> outcomes;
  std::vector<std::vector<double>> table;  // [outcome][point], values in [0,1]
};

struct OntologicalModel {
  OnticSpace space;
  std::map<std::string, EpistemicState> preparations;
  std::map<std::string, ResponseFunction> measurements;
};

struct LabeledKet {
  std::string label;
  Ket ket;
};

/// Rank-1 projective measurement given by an orthonormal outcome basis.
struct MeasurementSpec {
  std::string label;
  std::vector<LabeledKet> outcomes;
};

/// Indices with density above the threshold (default 1e-12 on density, not
/// on mass).
std::vector<std::size_t> support(const EpistemicState& state,
                                 double threshold = kSupportThreshold);

/// Integral of mu(.|psi) over the ontic support of phi (Kahan-summed so the
/// result does not depend on any future reordering of the grid loops).
double overlap_mass(const OntologicalModel& model, const std::string& psi,
                    const std::string& phi,
                    double threshold = kSupportThreshold);

struct OmegaResult {
  double value = 0.0;       // ratio clamped to [0,1]
  double ratio = 0.0;       // raw overlap_mass / quantum_overlap
  bool consistent = true;   // false when ratio > 1 + tolerance
};

/// Overlap fraction: overlap_mass(psi,phi) / quantum_overlap. Orthogonal
/// pairs (quantum_overlap == 0) are a defined error, not zero.
OmegaResult omega(const OntologicalModel& model, const std::string& psi,
                  const std::string& phi, double quantum_overlap,
                  double consistency_tol = kOmegaConsistencyTol);

/// Max over outcomes of |sum_i xi(outcome|i) mu(i|prep) w_i - quantum_prob|.
/// `quantum_probs` must be keyed by the measurement's outcome labels.
double born_residual(const OntologicalModel& model, const std::string& prep,
                     const std::string& meas,
                     const std::map<std::string, double>& quantum_probs);

/// Kochen-Specker qubit model on an equal-angle sphere grid:
///   mu_psi(l)  = (1/pi) (n_psi . l) [n_psi . l > 0]   (normalized on the grid)
///   xi(phi|l) = [n_phi . l >= 0]
/// The boundary convention (strict > for densities, >= for responses) matters
/// only on a measure-zero set. Steps below 8 are rejected as degenerate.
OntologicalModel ks_model(int polar_steps, int azimuthal_steps,
                          const std::vector<LabeledKet>& preparations,
                          const std::vector<MeasurementSpec>& measurements);

/// Indeterministic psi-ontic baseline: one ontic point per preparation,
/// response equal to the Born probability at that point.
OntologicalModel psi_ontic_model(const std::vector<LabeledKet>& preparations,
                                 const std::vector<MeasurementSpec>& measurements);

/// Checks that each preparation's support lies in the core of its own
/// response (outcome label == preparation label, in any measurement that
/// carries it). Returns human-readable violations; empty means pass.
std::vector<std::string> core_containment_violations(
    const OntologicalModel& model, double threshold = kSupportThreshold,
    double tol = 1e-6);

/// Plain-text debugging dump: one row per ontic point with index, Bloch
/// direction (blank for abstract spaces), weight and per-preparation density.
/// Not a stability-guaranteed format.
void dump_model(const OntologicalModel& model, std::ostream& out);

/// Fixed verification battery: the six axis states plus two tilted ones,
/// against the Z, X and Y bases (24 preparation/measurement pairs). The
/// tilted preparations keep the quadrature error visible; axis-aligned pairs
/// are superconvergent on the equal-angle grid.
std::vector<LabeledKet> standard_preparations();
std::vector<MeasurementSpec> standard_measurements();

/// Born probabilities |<outcome|prep>|^2 keyed by outcome label.
std::map<std::string, double> born_probabilities(const Ket& prep,
                                                 const MeasurementSpec& meas);

}  // namespace onto
