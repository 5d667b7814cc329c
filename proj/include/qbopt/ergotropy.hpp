#pragma once

#include <span>

#include <Eigen/Dense>

#include "qbopt/ansatz.hpp"
#include "qbopt/hamiltonian.hpp"
#include "qbopt/statevector.hpp"

namespace qbopt {

using DensityMatrix = Eigen::MatrixXcd;

/// |psi><psi| as a dense Hermitian matrix.
DensityMatrix pure_density(const Statevector& state);

/// The passive state of rho for the given spectrum: populations of rho sorted
/// descending, attached to the energy eigenvectors sorted ascending. No work
/// is unitarily extractable from the result.
DensityMatrix passive_state(const DensityMatrix& rho, const Spectrum& spectrum);

struct WorkReport {
  double mean_energy = 0.0;     // Tr{H rho}
  double passive_energy = 0.0;  // Tr{H pi_rho}
  double ergotropy = 0.0;       // mean_energy - passive_energy, >= 0
};

/// Maximal unitarily extractable work and its two energy components.
WorkReport compute_ergotropy(const DensityMatrix& rho, const HamiltonianMatrix& hamiltonian,
                             const Spectrum& spectrum);

/// Work cost function W(theta) = E_in - <psi(theta)|H|psi(theta)> against the
/// dense Hamiltonian. Bounded above by the ergotropy for any theta.
double cost_work(std::span<const double> theta, const Ansatz& ansatz, const Statevector& input,
                 const HamiltonianMatrix& hamiltonian);

/// eta = mean_work / ergotropy, clipped to 1 when the overshoot is below 1e-9.
/// Throws ArgumentError for ergotropy <= 0 (degenerate battery).
double efficiency(double mean_work, double ergotropy);

/// W(theta) for a fixed (ansatz, input, model) triple, the object the
/// optimizer climbs. Evaluates the chain energy bond-wise, so a call costs
/// O(n 2^n); equal to cost_work against the dense matrix to 1e-12.
/// Immutable and safe to share across threads.
class WorkFunction {
public:
  WorkFunction(Ansatz ansatz, Statevector input, SpinModel model);

  double operator()(std::span<const double> theta) const;

  int param_count() const { return ansatz_.param_count(); }
  double input_energy() const { return input_energy_; }
  const Ansatz& ansatz() const { return ansatz_; }
  const SpinModel& model() const { return model_; }
  const Statevector& input() const { return input_; }

private:
  Ansatz ansatz_;
  Statevector input_;
  SpinModel model_;
  double input_energy_;
};

}  // namespace qbopt
