#include "qbopt/statevector.hpp"

#include <cmath>
#include <string>

#include "qbopt/errors.hpp"

namespace qbopt {

namespace {

void check_qubit(int qubit, int n, const char* where) {
  if (qubit < 1 || qubit > n) {
    throw ArgumentError(std::string(where) + ": qubit index " + std::to_string(qubit) +
                        " out of range 1.." + std::to_string(n));
  }
}

}  // namespace

Statevector::Statevector(int num_qubits)
    : n_(num_qubits), amps_(std::size_t{1} << num_qubits, std::complex<double>{0.0, 0.0}) {}

Statevector Statevector::basis_state(int num_qubits, const std::vector<Spin>& spins) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ConfigError("basis_state: qubit count " + std::to_string(num_qubits) +
                      " outside supported range 1.." + std::to_string(kMaxQubits));
  }
  if (static_cast<int>(spins.size()) != num_qubits) {
    throw ArgumentError("basis_state: expected " + std::to_string(num_qubits) +
                        " spin labels, got " + std::to_string(spins.size()));
  }
  std::size_t index = 0;
  for (int m = 0; m < num_qubits; ++m) {
    if (spins[m] == Spin::Up) index |= std::size_t{1} << m;
  }
  Statevector state(num_qubits);
  state.amps_[index] = {1.0, 0.0};
  return state;
}

Statevector Statevector::all_up(int num_qubits) {
  return basis_state(num_qubits, std::vector<Spin>(num_qubits, Spin::Up));
}

Statevector Statevector::from_amplitudes(int num_qubits, std::vector<std::complex<double>> amps) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw ConfigError("from_amplitudes: qubit count " + std::to_string(num_qubits) +
                      " outside supported range 1.." + std::to_string(kMaxQubits));
  }
  if (amps.size() != (std::size_t{1} << num_qubits)) {
    throw ArgumentError("from_amplitudes: expected " +
                        std::to_string(std::size_t{1} << num_qubits) + " amplitudes, got " +
                        std::to_string(amps.size()));
  }
  Statevector state(num_qubits);
  state.amps_ = std::move(amps);
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ArgumentError("from_amplitudes: vector norm " + std::to_string(norm) +
                        " differs from 1 by more than 1e-9");
  }
  return state;
}

void Statevector::apply_ry(int qubit, double theta) {
  check_qubit(qubit, n_, "apply_ry");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::size_t mask = std::size_t{1} << (qubit - 1);
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t low = 0; low < mask; ++low) {
      const std::size_t i0 = base + low;   // qubit bit clear: |down>
      const std::size_t i1 = i0 + mask;    // qubit bit set:   |up>
      const std::complex<double> a0 = amps_[i0];
      const std::complex<double> a1 = amps_[i1];
      amps_[i0] = c * a0 - s * a1;
      amps_[i1] = s * a0 + c * a1;
    }
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control, n_, "apply_cnot");
  check_qubit(target, n_, "apply_cnot");
  if (control == target) {
    throw ArgumentError("apply_cnot: control and target must differ (both " +
                        std::to_string(control) + ")");
  }
  const std::size_t cmask = std::size_t{1} << (control - 1);
  const std::size_t tmask = std::size_t{1} << (target - 1);
  const std::size_t dim = amps_.size();
  // Pure permutation: visit each swapped pair once via the cleared target bit.
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cmask) == 0 && (i & tmask) == 0) {
      std::swap(amps_[i], amps_[i | tmask]);
    }
  }
}

double Statevector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

double Statevector::sigma_z_expectation(int qubit) const {
  check_qubit(qubit, n_, "sigma_z_expectation");
  const std::size_t mask = std::size_t{1} << (qubit - 1);
  double value = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    value += ((i & mask) ? -1.0 : 1.0) * std::norm(amps_[i]);
  }
  return value;
}

double expectation(const Statevector& state, const Eigen::MatrixXd& hamiltonian) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
    throw ArgumentError("expectation: matrix is " + std::to_string(hamiltonian.rows()) + "x" +
                        std::to_string(hamiltonian.cols()) + ", state dimension is " +
                        std::to_string(dim));
  }
  Eigen::VectorXd real_part(dim), imag_part(dim);
  const auto& amps = state.amplitudes();
  for (Eigen::Index i = 0; i < dim; ++i) {
    real_part[i] = amps[static_cast<std::size_t>(i)].real();
    imag_part[i] = amps[static_cast<std::size_t>(i)].imag();
  }
  const Eigen::VectorXd h_re = hamiltonian * real_part;
  const Eigen::VectorXd h_im = hamiltonian * imag_part;
  const double value = real_part.dot(h_re) + imag_part.dot(h_im);
  const double residue = real_part.dot(h_im) - imag_part.dot(h_re);
  if (std::abs(residue) >= 1e-10) {
    throw NumericalError("expectation: imaginary residue " + std::to_string(residue) +
                         " exceeds 1e-10 (matrix not symmetric?)");
  }
  return value;
}

}  // namespace qbopt
