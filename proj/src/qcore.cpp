#include "onto/qcore.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace onto {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Uniform double in [0,1) from the raw 64-bit stream (platform-independent,
// unlike std::uniform_real_distribution).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Ket::Ket(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
  const int d = static_cast<int>(amps_.size());
  if (d < 2 || !is_power_of_two(d)) {
    throw std::invalid_argument("Ket: dimension must be a power of two >= 2, got " +
                                std::to_string(d));
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kExactTol) {
    throw std::invalid_argument("Ket: vector is not normalized (|norm^2 - 1| > 1e-12)");
  }
}

Operator::Operator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw std::invalid_argument("Operator: matrix must be square and non-empty");
  }
}

bool Operator::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  const Eigen::MatrixXcd gram = entries_.adjoint() * entries_;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim(), dim());
  return (gram - id).cwiseAbs().maxCoeff() <= tol;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("Operator product: dimension mismatch");
  }
  return Operator(lhs.entries() * rhs.entries());
}

Ket operator*(const Operator& op, const Ket& state) {
  if (op.dim() != state.dim()) {
    throw std::invalid_argument("Operator-Ket product: dimension mismatch");
  }
  return Ket(op.entries() * state.amplitudes());
}

Operator operator-(const Operator& op) { return Operator(-op.entries()); }

Ket basis_ket(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("basis_ket: index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return Ket(std::move(v));
}

Ket ket_zero() { return basis_ket(2, 0); }
Ket ket_one() { return basis_ket(2, 1); }

Ket qubit_state(double polar, double azimuth) {
  Eigen::VectorXcd v(2);
  v(0) = std::cos(polar / 2.0);
  v(1) = std::polar(std::sin(polar / 2.0), azimuth);
  return Ket(std::move(v));
}

Ket ket_plus() {
  Eigen::VectorXcd v(2);
  v(0) = v(1) = 1.0 / std::numbers::sqrt2;
  return Ket(std::move(v));
}

Ket ket_minus() {
  Eigen::VectorXcd v(2);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(1) = -1.0 / std::numbers::sqrt2;
  return Ket(std::move(v));
}

Ket ket_plus_i() {
  Eigen::VectorXcd v(2);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(1) = Complex(0.0, 1.0 / std::numbers::sqrt2);
  return Ket(std::move(v));
}

Ket ket_minus_i() {
  Eigen::VectorXcd v(2);
  v(0) = 1.0 / std::numbers::sqrt2;
  v(1) = Complex(0.0, -1.0 / std::numbers::sqrt2);
  return Ket(std::move(v));
}

Ket random_qubit(std::mt19937_64& rng) {
  // Haar measure on the Bloch sphere: cos(polar) uniform in [-1,1],
  // azimuth uniform in [0,2pi).
  const double polar = std::acos(1.0 - 2.0 * uniform01(rng));
  const double azimuth = 2.0 * std::numbers::pi * uniform01(rng);
  return qubit_state(polar, azimuth);
}

Operator identity_op(int dim) {
  return Operator(Eigen::MatrixXcd::Identity(dim, dim));
}

Operator pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(std::move(m));
}

Operator pauli_y() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return Operator(std::move(m));
}

Operator pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(std::move(m));
}

Ket tensor(const Ket& a, const Ket& b) {
  const int da = a.dim(), db = b.dim();
  Eigen::VectorXcd v(da * db);
  for (int i = 0; i < da; ++i) {
    v.segment(i * db, db) = a.amplitude(i) * b.amplitudes();
  }
  return Ket(std::move(v));
}

Ket tensor(const Ket& a, const Ket& b, const Ket& c) {
  return tensor(tensor(a, b), c);
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  Eigen::MatrixXcd m(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
  }
  return Operator(std::move(m));
}

Operator tensor(const Operator& a, const Operator& b, const Operator& c) {
  return tensor(tensor(a, b), c);
}

Complex inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen dot conjugates the left factor
}

double fidelity(const Ket& a, const Ket& b) { return std::norm(inner(a, b)); }

double expectation(const Ket& state, const Operator& obs) {
  if (state.dim() != obs.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch between state and observable");
  }
  if (!obs.is_hermitian()) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const Complex value = state.amplitudes().dot(obs.entries() * state.amplitudes());
  if (std::abs(value.imag()) > kExactTol) {
    throw std::logic_error("expectation: imaginary residue above 1e-12");
  }
  return value.real();
}

Eigen::Vector3d bloch_vector(const Ket& state) {
  if (state.dim() != 2) {
    throw std::invalid_argument("bloch_vector: expects a qubit state");
  }
  return {expectation(state, pauli_x()), expectation(state, pauli_y()),
          expectation(state, pauli_z())};
}

MerminSettings canonical_mermin_settings() {
  return MerminSettings{pauli_x(), pauli_y(), pauli_x(),
                        pauli_y(), -pauli_y(), pauli_x()};
}

MerminSettings all_x_mermin_settings() {
  return MerminSettings{pauli_x(), pauli_x(), pauli_x(),
                        pauli_x(), pauli_x(), pauli_x()};
}

void validate_settings(const MerminSettings& settings) {
  const Operator* obs[] = {&settings.a0, &settings.a1, &settings.b0,
                           &settings.b1, &settings.c0, &settings.c1};
  const char* names[] = {"a0", "a1", "b0", "b1", "c0", "c1"};
  for (int i = 0; i < 6; ++i) {
    if (obs[i]->dim() != 2) {
      throw std::invalid_argument(std::string("mermin settings: ") + names[i] +
                                  " is not a single-qubit observable");
    }
    if (!obs[i]->is_hermitian()) {
      throw std::invalid_argument(std::string("mermin settings: ") + names[i] +
                                  " is not Hermitian");
    }
    const Eigen::MatrixXcd sq = obs[i]->entries() * obs[i]->entries();
    if ((sq - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() > kExactTol) {
      throw std::invalid_argument(std::string("mermin settings: ") + names[i] +
                                  " does not square to the identity");
    }
  }
}

Operator mermin_operator(const MerminSettings& settings) {
  validate_settings(settings);
  const Eigen::MatrixXcd m =
      tensor(settings.a0, settings.b0, settings.c1).entries() +
      tensor(settings.a0, settings.b1, settings.c0).entries() +
      tensor(settings.a1, settings.b0, settings.c0).entries() -
      tensor(settings.a1, settings.b1, settings.c1).entries();
  return Operator(m);
}

double mermin_value(const Ket& state, const MerminSettings& settings) {
  if (state.dim() != 8) {
    throw std::invalid_argument("mermin_value: state must have dimension 8");
  }
  validate_settings(settings);
  return expectation(state, tensor(settings.a0, settings.b0, settings.c1)) +
         expectation(state, tensor(settings.a0, settings.b1, settings.c0)) +
         expectation(state, tensor(settings.a1, settings.b0, settings.c0)) -
         expectation(state, tensor(settings.a1, settings.b1, settings.c1));
}

Operator machine_unitary() {
  // Permutation in the computational basis: (a,b,c) -> (a, b xor a, c xor a).
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(8, 8);
  for (int in = 0; in < 8; ++in) {
    const int a = (in >> 2) & 1, b = (in >> 1) & 1, c = in & 1;
    const int out = (a << 2) | ((b ^ a) << 1) | (c ^ a);
    u(out, in) = 1.0;
  }
  return Operator(std::move(u));
}

Ket ghz_state() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = v(7) = 1.0 / std::numbers::sqrt2;
  return Ket(std::move(v));
}

}  // namespace onto
