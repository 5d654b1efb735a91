#include "onto/ontology.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace onto {

namespace {

// Neumaier-compensated accumulator: grid sums stay deterministic to well
// below 1e-12 regardless of cell count.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

const EpistemicState& prep_or_throw(const OntologicalModel& model,
                                    const std::string& label) {
  const auto it = model.preparations.find(label);
  if (it == model.preparations.end()) {
    throw std::out_of_range("unknown preparation label: " + label);
  }
  return it->second;
}

const ResponseFunction& meas_or_throw(const OntologicalModel& model,
                                      const std::string& label) {
  const auto it = model.measurements.find(label);
  if (it == model.measurements.end()) {
    throw std::out_of_range("unknown measurement label: " + label);
  }
  return it->second;
}

}  // namespace

double OnticSpace::total_weight() const {
  KahanSum acc;
  for (double w : weights) acc.add(w);
  return acc.value();
}

std::vector<std::size_t> support(const EpistemicState& state, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("support: threshold must be non-negative");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < state.density.size(); ++i) {
    if (state.density[i] > threshold) idx.push_back(i);
  }
  return idx;
}

double overlap_mass(const OntologicalModel& model, const std::string& psi,
                    const std::string& phi, double threshold) {
  const auto& mu_psi = prep_or_throw(model, psi);
  const auto& mu_phi = prep_or_throw(model, phi);
  KahanSum acc;
  for (std::size_t i = 0; i < model.space.size(); ++i) {
    if (mu_phi.density[i] > threshold) {
      acc.add(mu_psi.density[i] * model.space.weights[i]);
    }
  }
  return acc.value();
}

OmegaResult omega(const OntologicalModel& model, const std::string& psi,
                  const std::string& phi, double quantum_overlap,
                  double consistency_tol) {
  if (quantum_overlap < 0.0 || quantum_overlap > 1.0 + kExactTol) {
    throw std::invalid_argument("omega: quantum_overlap outside [0,1]");
  }
  if (quantum_overlap == 0.0) {
    throw std::domain_error("orthogonal pair: omega undefined (Eq. divides by zero overlap)");
  }
  OmegaResult r;
  r.ratio = overlap_mass(model, psi, phi) / quantum_overlap;
  r.consistent = r.ratio <= 1.0 + consistency_tol;
  r.value = std::min(std::max(r.ratio, 0.0), 1.0);
  return r;
}

double born_residual(const OntologicalModel& model, const std::string& prep,
                     const std::string& meas,
                     const std::map<std::string, double>& quantum_probs) {
  const auto& mu = prep_or_throw(model, prep);
  const auto& xi = meas_or_throw(model, meas);
  if (quantum_probs.size() != xi.outcomes.size()) {
    throw std::invalid_argument("born_residual: outcome count mismatch for " + meas);
  }
  double worst = 0.0;
  for (std::size_t o = 0; o < xi.outcomes.size(); ++o) {
    const auto it = quantum_probs.find(xi.outcomes[o]);
    if (it == quantum_probs.end()) {
      throw std::invalid_argument("born_residual: missing quantum probability for outcome " +
                                  xi.outcomes[o]);
    }
    KahanSum acc;
    for (std::size_t i = 0; i < model.space.size(); ++i) {
      acc.add(xi.table[o][i] * mu.density[i] * model.space.weights[i]);
    }
    worst = std::max(worst, std::abs(acc.value() - it->second));
  }
  return worst;
}

OntologicalModel ks_model(int polar_steps, int azimuthal_steps,
                          const std::vector<LabeledKet>& preparations,
                          const std::vector<MeasurementSpec>& measurements) {
  if (polar_steps < 8 || azimuthal_steps < 8) {
    throw std::invalid_argument("ks_model: grid is degenerate, need at least 8 steps per axis");
  }

  OntologicalModel model;
  auto& space = model.space;
  const std::size_t n = static_cast<std::size_t>(polar_steps) * azimuthal_steps;
  space.weights.reserve(n);
  space.directions.reserve(n);

  const double dphi = 2.0 * std::numbers::pi / azimuthal_steps;
  for (int i = 0; i < polar_steps; ++i) {
    // Exact cell solid angle (cos(lo) - cos(hi)) * dphi; midpoint direction.
    const double lo = std::numbers::pi * i / polar_steps;
    const double hi = std::numbers::pi * (i + 1) / polar_steps;
    const double theta = 0.5 * (lo + hi);
    const double w = (std::cos(lo) - std::cos(hi)) * dphi;
    for (int j = 0; j < azimuthal_steps; ++j) {
      const double phi = dphi * (j + 0.5);
      space.directions.emplace_back(std::sin(theta) * std::cos(phi),
                                    std::sin(theta) * std::sin(phi),
                                    std::cos(theta));
      space.weights.push_back(w);
    }
  }

  for (const auto& prep : preparations) {
    const Eigen::Vector3d axis = bloch_vector(prep.ket);
    EpistemicState state;
    state.label = prep.label;
    state.density.resize(n, 0.0);
    KahanSum mass;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = axis.dot(space.directions[i]);
      if (d > 0.0) {
        state.density[i] = d / std::numbers::pi;
        mass.add(state.density[i] * space.weights[i]);
      }
    }
    state.raw_mass = mass.value();
    for (auto& v : state.density) v /= state.raw_mass;
    model.preparations.emplace(prep.label, std::move(state));
  }

  for (const auto& spec : measurements) {
    ResponseFunction xi;
    for (const auto& outcome : spec.outcomes) {
      const Eigen::Vector3d axis = bloch_vector(outcome.ket);
      std::vector<double> row(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = axis.dot(space.directions[i]) >= 0.0 ? 1.0 : 0.0;
      }
      xi.outcomes.push_back(outcome.label);
      xi.table.push_back(std::move(row));
    }
    model.measurements.emplace(spec.label, std::move(xi));
  }
  return model;
}

OntologicalModel psi_ontic_model(const std::vector<LabeledKet>& preparations,
                                 const std::vector<MeasurementSpec>& measurements) {
  OntologicalModel model;
  const std::size_t n = preparations.size();
  model.space.weights.assign(n, 1.0);
  for (const auto& prep : preparations) model.space.labels.push_back(prep.label);

  for (std::size_t i = 0; i < n; ++i) {
    EpistemicState state;
    state.label = preparations[i].label;
    state.density.assign(n, 0.0);
    state.density[i] = 1.0;
    model.preparations.emplace(state.label, std::move(state));
  }

  for (const auto& spec : measurements) {
    ResponseFunction xi;
    for (const auto& outcome : spec.outcomes) {
      std::vector<double> row(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = fidelity(outcome.ket, preparations[i].ket);
      }
      xi.outcomes.push_back(outcome.label);
      xi.table.push_back(std::move(row));
    }
    model.measurements.emplace(spec.label, std::move(xi));
  }
  return model;
}

std::vector<std::string> core_containment_violations(const OntologicalModel& model,
                                                     double threshold, double tol) {
  std::vector<std::string> violations;
  for (const auto& [prep_label, state] : model.preparations) {
    for (const auto& [meas_label, xi] : model.measurements) {
      for (std::size_t o = 0; o < xi.outcomes.size(); ++o) {
        if (xi.outcomes[o] != prep_label) continue;
        for (std::size_t i = 0; i < model.space.size(); ++i) {
          if (state.density[i] > threshold && std::abs(xi.table[o][i] - 1.0) > tol) {
            violations.push_back("prep " + prep_label + ", measurement " + meas_label +
                                 ", point " + std::to_string(i) + ": response " +
                                 std::to_string(xi.table[o][i]) + " != 1 on support");
          }
        }
      }
    }
  }
  return violations;
}

std::vector<LabeledKet> standard_preparations() {
  return {
      {"0", ket_zero()},       {"1", ket_one()},
      {"+", ket_plus()},       {"-", ket_minus()},
      {"i", ket_plus_i()},     {"-i", ket_minus_i()},
      {"t1", qubit_state(0.7, 0.4)},
      {"t2", qubit_state(2.1, 3.9)},
  };
}

std::vector<MeasurementSpec> standard_measurements() {
  return {
      {"Z", {{"0", ket_zero()}, {"1", ket_one()}}},
      {"X", {{"+", ket_plus()}, {"-", ket_minus()}}},
      {"Y", {{"i", ket_plus_i()}, {"-i", ket_minus_i()}}},
  };
}

std::map<std::string, double> born_probabilities(const Ket& prep,
                                                 const MeasurementSpec& meas) {
  std::map<std::string, double> probs;
  for (const auto& outcome : meas.outcomes) {
    probs[outcome.label] = fidelity(outcome.ket, prep);
  }
  return probs;
}

void dump_model(const OntologicalModel& model, std::ostream& out) {
  out << "# ontic-space dump: one row per point\n";
  out << "index\tbloch_x\tbloch_y\tbloch_z\tweight";
  for (const auto& [label, state] : model.preparations) out << "\tmu(" << label << ")";
  out << "\n";
  for (std::size_t i = 0; i < model.space.size(); ++i) {
    out << i;
    if (model.space.has_directions()) {
      const auto& d = model.space.directions[i];
      out << "\t" << d.x() << "\t" << d.y() << "\t" << d.z();
    } else {
      out << "\t-\t-\t-";
    }
    out << "\t" << model.space.weights[i];
    for (const auto& [label, state] : model.preparations) out << "\t" << state.density[i];
    out << "\n";
  }
}

}  // namespace onto
