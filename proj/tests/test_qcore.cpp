#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onto/qcore.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace onto;

namespace {

// Test-local oracle path: naive Kronecker product and expectation built
// directly on Eigen, independent of the library implementation.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXcd X() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Eigen::MatrixXcd Y() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

double oracle_expectation(const Eigen::VectorXcd& v, const Eigen::MatrixXcd& m) {
  return (v.adjoint() * m * v)(0, 0).real();
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

TEST_CASE("ket invariants") {
  Eigen::VectorXcd bad(2);
  bad << 1.0, 1.0;  // norm sqrt(2)
  CHECK_THROWS_AS(Ket{bad}, std::invalid_argument);

  Eigen::VectorXcd dim3 = Eigen::VectorXcd::Zero(3);
  dim3(0) = 1.0;
  CHECK_THROWS_AS(Ket{dim3}, std::invalid_argument);

  CHECK(ket_plus().norm() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tensor products") {
  const Ket zz = tensor(ket_zero(), ket_zero());
  CHECK(zz.dim() == 4);
  CHECK(std::abs(zz.amplitude(0) - 1.0) < 1e-15);
  CHECK(std::abs(zz.amplitude(1)) < 1e-15);
  CHECK(std::abs(zz.amplitude(2)) < 1e-15);
  CHECK(std::abs(zz.amplitude(3)) < 1e-15);

  const Ket pz = tensor(ket_plus(), ket_zero());
  const double s = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(pz.amplitude(0) - s) < 1e-15);
  CHECK(std::abs(pz.amplitude(1)) < 1e-15);
  CHECK(std::abs(pz.amplitude(2) - s) < 1e-15);
  CHECK(std::abs(pz.amplitude(3)) < 1e-15);

  CHECK(tensor(ket_zero(), ket_zero(), ket_zero()).dim() == 8);
}

TEST_CASE("tensor preserves the norm for random qubits") {
  std::mt19937_64 rng(0);
  for (int t = 0; t < 200; ++t) {
    const Ket k = tensor(random_qubit(rng), random_qubit(rng), random_qubit(rng));
    CHECK(std::abs(k.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("expectation values") {
  CHECK(expectation(ket_zero(), pauli_z()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expectation(ket_plus(), pauli_x()) == doctest::Approx(1.0).epsilon(1e-14));

  // <GHZ|XXX|GHZ> = 1 against the independent oracle
  const Eigen::MatrixXcd xxx = kron(X(), kron(X(), X()));
  const Ket ghz = ghz_state();
  CHECK(oracle_expectation(ghz.amplitudes(), xxx) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(expectation(ghz, Operator(xxx)) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(expectation(ket_zero(), identity_op(8)), std::invalid_argument);
  // non-Hermitian observable is rejected
  Eigen::MatrixXcd nh(2, 2);
  nh << 0, 1, 0, 0;
  CHECK_THROWS_AS(expectation(ket_zero(), Operator(nh)), std::invalid_argument);
}

TEST_CASE("machine unitary") {
  const Operator u = machine_unitary();
  CHECK(u.is_unitary(1e-12));

  const Ket out0 = u * basis_ket(8, 0);
  CHECK((out0.amplitudes() - basis_ket(8, 0).amplitudes()).cwiseAbs().maxCoeff() < 1e-15);

  const Ket out1 = u * basis_ket(8, 4);  // |100>
  CHECK((out1.amplitudes() - basis_ket(8, 7).amplitudes()).cwiseAbs().maxCoeff() < 1e-15);

  const Ket ghz_made = u * tensor(ket_plus(), ket_zero(), ket_zero());
  CHECK((ghz_made.amplitudes() - ghz_state().amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ghz state") {
  const Ket ghz = ghz_state();
  CHECK(ghz.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(ghz.amplitude(0) - 1.0 / std::numbers::sqrt2) < 1e-15);
  CHECK(std::abs(ghz.amplitude(7) - 1.0 / std::numbers::sqrt2) < 1e-15);

  // equals the machine unitary applied to |+00>, via the oracle matvec
  const Eigen::VectorXcd via_oracle =
      machine_unitary().entries() *
      tensor(ket_plus(), ket_zero(), ket_zero()).amplitudes();
  CHECK((via_oracle - ghz.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mermin value on reference states") {
  const MerminSettings canonical = canonical_mermin_settings();
  validate_settings(canonical);

  CHECK(mermin_value(ghz_state(), canonical) == doctest::Approx(4.0).epsilon(1e-13));
  // |000>: every correlator carries an X or Y factor on some party
  CHECK(std::abs(mermin_value(basis_ket(8, 0), canonical)) < 1e-12);
  CHECK(mermin_value(ghz_state(), all_x_mermin_settings()) ==
        doctest::Approx(2.0).epsilon(1e-13));

  CHECK_THROWS_AS(mermin_value(ket_zero(), canonical), std::invalid_argument);
}

TEST_CASE("canonical settings are dichotomic and reach 4 via the oracle route") {
  // Same value through the assembled 8x8 Mermin operator (independent kron).
  const Eigen::MatrixXcd mop = kron(X(), kron(X(), X())) +
                               kron(X(), kron(Y(), -Y())) +
                               kron(Y(), kron(X(), -Y())) -
                               kron(Y(), kron(Y(), X()));
  CHECK(oracle_expectation(ghz_state().amplitudes(), mop) ==
        doctest::Approx(4.0).epsilon(1e-14));

  const Operator assembled = mermin_operator(canonical_mermin_settings());
  CHECK((assembled.entries() - mop).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("mermin value is linear in the density operator") {
  std::mt19937_64 rng(7);
  const MerminSettings settings = canonical_mermin_settings();
  const Eigen::MatrixXcd mop = mermin_operator(settings).entries();
  for (int t = 0; t < 50; ++t) {
    const Ket psi = tensor(random_qubit(rng), random_qubit(rng), random_qubit(rng));
    const Ket phi = ghz_state();
    const double p = uniform01(rng);
    const Eigen::MatrixXcd rho =
        p * (psi.amplitudes() * psi.amplitudes().adjoint()) +
        (1.0 - p) * (phi.amplitudes() * phi.amplitudes().adjoint());
    const double via_density = (rho * mop).trace().real();
    const double via_mix = p * mermin_value(psi, settings) + (1.0 - p) * mermin_value(phi, settings);
    CHECK(via_density == doctest::Approx(via_mix).epsilon(1e-12));
  }
}

TEST_CASE("separable states respect the local bound") {
  std::mt19937_64 rng(42);
  const MerminSettings settings = canonical_mermin_settings();
  double max_seen = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Ket product = tensor(random_qubit(rng), random_qubit(rng), random_qubit(rng));
    const double value = mermin_value(product, settings);
    max_seen = std::max(max_seen, std::abs(value));
    REQUIRE(std::abs(value) <= 2.0 + 1e-12);
  }
  CHECK(max_seen > 1.0);  // the sample actually explores the polytope
}

TEST_CASE("settings validation rejects non-dichotomic observables") {
  MerminSettings bad = canonical_mermin_settings();
  Eigen::MatrixXcd half(2, 2);
  half << 0.5, 0, 0, -0.5;
  bad.c0 = Operator(half);  // Hermitian but squares to I/4
  CHECK_THROWS_AS(validate_settings(bad), std::invalid_argument);
}
