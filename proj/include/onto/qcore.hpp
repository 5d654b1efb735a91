#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <string>

namespace onto {

using Complex = std::complex<double>;

// Tolerance for exact linear algebra at these dimensions (<= 8, doubles).
inline constexpr double kExactTol = 1e-12;

/// Normalized complex state vector. Dimension is a power of two (2, 4 or 8
/// here). Construction rejects vectors that are not unit-norm.
class Ket {
 public:
  explicit Ket(Eigen::VectorXcd amplitudes);

  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Complex amplitude(int i) const { return amps_(i); }
  double norm() const { return amps_.norm(); }

 private:
  Eigen::VectorXcd amps_;
};

/// Square complex matrix acting on a Ket of matching dimension.
class Operator {
 public:
  explicit Operator(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Operator adjoint() const { return Operator(entries_.adjoint()); }

  bool is_hermitian(double tol = kExactTol) const;
  bool is_unitary(double tol = kExactTol) const;

 private:
  Eigen::MatrixXcd entries_;
};

Operator operator*(const Operator& lhs, const Operator& rhs);
Ket operator*(const Operator& op, const Ket& state);
Operator operator-(const Operator& op);

// Basis kets and common qubit states. Computational-basis index of a
// three-qubit ket |abc> is 4a + 2b + c (A is the most significant bit).
Ket basis_ket(int dim, int index);
Ket ket_zero();
Ket ket_one();
Ket ket_plus();
Ket ket_minus();
Ket ket_plus_i();
Ket ket_minus_i();

/// cos(polar/2)|0> + e^{i azimuth} sin(polar/2)|1>  (Bloch angles).
Ket qubit_state(double polar, double azimuth);

/// Haar-random single-qubit pure state. Uses only the raw mt19937_64 output
/// stream, so sequences are identical across platforms for a given seed.
Ket random_qubit(std::mt19937_64& rng);

Operator identity_op(int dim);
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

Ket tensor(const Ket& a, const Ket& b);
Ket tensor(const Ket& a, const Ket& b, const Ket& c);
Operator tensor(const Operator& a, const Operator& b);
Operator tensor(const Operator& a, const Operator& b, const Operator& c);

Complex inner(const Ket& a, const Ket& b);
/// |<a|b>|^2
double fidelity(const Ket& a, const Ket& b);

/// <state|obs|state> for Hermitian obs; the imaginary residue is checked to
/// be below kExactTol and discarded. Dimension mismatch is a hard error.
double expectation(const Ket& state, const Operator& obs);

/// Bloch vector (<X>, <Y>, <Z>) of a qubit state.
Eigen::Vector3d bloch_vector(const Ket& state);

/// Six dichotomic single-qubit observables (Hermitian, squaring to I).
struct MerminSettings {
  Operator a0, a1, b0, b1, c0, c1;
};

/// Settings reaching the algebraic maximum 4 on (|000>+|111>)/sqrt(2):
/// a0=X, a1=Y, b0=X, b1=Y, c0=-Y, c1=X.
MerminSettings canonical_mermin_settings();
/// All six observables set to X; yields 2 on the GHZ state.
MerminSettings all_x_mermin_settings();

/// Throws if any observable is not Hermitian or does not square to I.
void validate_settings(const MerminSettings& settings);

/// a0 b0 c1 + a0 b1 c0 + a1 b0 c0 - a1 b1 c1 as an 8x8 observable.
Operator mermin_operator(const MerminSettings& settings);

/// Signed sum of the four three-party correlators on an 8-dim state, each
/// evaluated as an expectation of the tensor-product observable.
double mermin_value(const Ket& state, const MerminSettings& settings);

/// 8x8 unitary with U|0bc> = |0bc> and U|1bc> = |1,b^1,c^1>: copies qubit A
/// onto B and C in the computational basis. With the reference state |0> this
/// gives U|000> = |000>, U|100> = |111>, U|+00> = GHZ.
Operator machine_unitary();

/// (|000> + |111>)/sqrt(2)
Ket ghz_state();

}  // namespace onto
