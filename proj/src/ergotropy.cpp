#include "qbopt/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qbopt/errors.hpp"

namespace qbopt {

namespace {

void check_density(const DensityMatrix& rho, const char* where) {
  if (rho.rows() != rho.cols()) {
    throw ArgumentError(std::string(where) + ": density matrix must be square");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10) {
    throw ArgumentError(std::string(where) + ": density matrix trace differs from 1");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ArgumentError(std::string(where) + ": density matrix is not Hermitian");
  }
}

/// Populations of rho sorted descending. Also checks positivity.
Eigen::VectorXd descending_populations(const DensityMatrix& rho, const char* where) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(std::string(where) + ": eigensolver failed on the density matrix");
  }
  Eigen::VectorXd populations = solver.eigenvalues();  // ascending
  if (populations.minCoeff() < -1e-10) {
    throw ArgumentError(std::string(where) + ": density matrix has negative population " +
                        std::to_string(populations.minCoeff()));
  }
  return populations.reverse();
}

}  // namespace

DensityMatrix pure_density(const Statevector& state) {
  const auto dim = static_cast<Eigen::Index>(state.dim());
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    psi[i] = state.amplitudes()[static_cast<std::size_t>(i)];
  }
  return psi * psi.adjoint();
}

DensityMatrix passive_state(const DensityMatrix& rho, const Spectrum& spectrum) {
  check_density(rho, "passive_state");
  if (rho.rows() != spectrum.eigenvectors.rows()) {
    throw ArgumentError("passive_state: density matrix dimension " + std::to_string(rho.rows()) +
                        " does not match spectrum dimension " +
                        std::to_string(spectrum.eigenvectors.rows()));
  }
  const Eigen::VectorXd populations = descending_populations(rho, "passive_state");
  const Eigen::MatrixXd passive_real =
      spectrum.eigenvectors * populations.asDiagonal() * spectrum.eigenvectors.transpose();
  return passive_real.cast<std::complex<double>>();
}

WorkReport compute_ergotropy(const DensityMatrix& rho, const HamiltonianMatrix& hamiltonian,
                             const Spectrum& spectrum) {
  check_density(rho, "compute_ergotropy");
  if (rho.rows() != hamiltonian.rows() || spectrum.eigenvalues.size() != hamiltonian.rows()) {
    throw ArgumentError("compute_ergotropy: dimension mismatch between state, Hamiltonian, "
                        "and spectrum");
  }
  WorkReport report;
  // Tr{H rho} with real symmetric H: only the real part of rho contributes.
  report.mean_energy = (hamiltonian.array() * rho.real().transpose().array()).sum();
  // Tr{H pi_rho} needs only the pairing of sorted populations with sorted
  // energies, not the passive matrix itself.
  const Eigen::VectorXd populations = descending_populations(rho, "compute_ergotropy");
  report.passive_energy = populations.dot(spectrum.eigenvalues);
  report.ergotropy = report.mean_energy - report.passive_energy;
  return report;
}

double cost_work(std::span<const double> theta, const Ansatz& ansatz, const Statevector& input,
                 const HamiltonianMatrix& hamiltonian) {
  const double input_energy = expectation(input, hamiltonian);
  Statevector evolved = input;
  apply_ansatz(evolved, ansatz, theta);
  return input_energy - expectation(evolved, hamiltonian);
}

double efficiency(double mean_work, double ergotropy) {
  if (!(ergotropy > 0.0)) {
    throw ArgumentError("efficiency undefined: ergotropy is " + std::to_string(ergotropy) +
                        " (degenerate battery)");
  }
  double eta = mean_work / ergotropy;
  if (eta > 1.0 && eta - 1.0 < 1e-9) eta = 1.0;
  return eta;
}

WorkFunction::WorkFunction(Ansatz ansatz, Statevector input, SpinModel model)
    : ansatz_(std::move(ansatz)), input_(std::move(input)), model_(std::move(model)),
      input_energy_(0.0) {
  if (ansatz_.n != model_.n || input_.num_qubits() != model_.n) {
    throw ArgumentError("WorkFunction: ansatz (" + std::to_string(ansatz_.n) + "), input (" +
                        std::to_string(input_.num_qubits()) + ") and model (" +
                        std::to_string(model_.n) + ") qubit counts must agree");
  }
  input_energy_ = chain_energy(input_, model_);
}

double WorkFunction::operator()(std::span<const double> theta) const {
  Statevector evolved = input_;
  apply_ansatz(evolved, ansatz_, theta);
  return input_energy_ - chain_energy(evolved, model_);
}

}  // namespace qbopt
