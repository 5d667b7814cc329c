#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace qbopt {

inline constexpr int kMaxQubits = 12;

/// Spin labels map to basis-index bits as: bit 0 = |down>, bit 1 = |up>.
/// Under this ordering sigma_z |down> = +|down> and sigma_z |up> = -|up>,
/// which is the sign convention the whole library is built on.
enum class Spin : int { Down = 0, Up = 1 };

/// Pure state of n qubits as a dense complex amplitude vector of length 2^n.
/// Little-endian layout: qubit 1 is the least significant index bit.
/// Qubit indices are 1-based throughout (qubit m lives on bit m-1).
class Statevector {
public:
  /// Basis ket |spins[n-1] ... spins[0]> with spins[0] on qubit 1.
  static Statevector basis_state(int num_qubits, const std::vector<Spin>& spins);

  /// The all-up product state |up...up>, the canonical charged input.
  static Statevector all_up(int num_qubits);

  /// Wraps an existing amplitude vector (length 2^n, unit norm within 1e-9).
  static Statevector from_amplitudes(int num_qubits, std::vector<std::complex<double>> amps);

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  /// y-rotation exp(-i theta sigma_y) on one qubit. No half-angle: the full
  /// angle sits in the exponent, so observables are pi-periodic in theta.
  /// Acts as |down> -> cos(theta)|down> + sin(theta)|up>.
  void apply_ry(int qubit, double theta);

  /// CNOT with the control active on |down> (bit 0): flips the target bit on
  /// the half of the basis where the control bit is clear.
  void apply_cnot(int control, int target);

  double norm() const;

  /// <sigma_z> on one qubit: +1 for |down>, -1 for |up>.
  double sigma_z_expectation(int qubit) const;

private:
  explicit Statevector(int num_qubits);

  int n_;
  std::vector<std::complex<double>> amps_;
};

/// <psi|H|psi> for a dense real symmetric H. The imaginary residue is checked
/// against 1e-10 and discarded.
double expectation(const Statevector& state, const Eigen::MatrixXd& hamiltonian);

}  // namespace qbopt
