#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "qbopt/statevector.hpp"

namespace qbopt {

/// Named anisotropy classes of the spin-chain family.
enum class ModelPreset { XXX, XXZ, XYZ, XX, XY, TFI };

std::string_view preset_name(ModelPreset preset);
std::optional<ModelPreset> parse_preset(std::string_view name);

/// One spin-1/2 chain battery: size, couplings, anisotropies, and the
/// optional preset tag the parameters were derived from.
///
/// The chain Hamiltonian (open boundaries, bonds between neighbors only):
///   H = -field * sum_j sigma_z(j)
///       - coupling * sum_j [ (1+gamma) sigma_x(j)sigma_x(j+1)
///                          + (1-gamma) sigma_y(j)sigma_y(j+1)
///                          + delta     sigma_z(j)sigma_z(j+1) ]
struct SpinModel {
  int n = 2;
  double coupling = -1.0;  // J
  double field = 0.5;      // h
  double gamma = 0.0;
  double delta = 0.0;
  std::optional<ModelPreset> preset;
};

/// Builds a SpinModel from a preset tag. Anisotropies the preset forces are
/// filled in (XXX -> delta=1, gamma=0; XX -> 0,0; XY/TFI -> delta=0); the free
/// ones must be supplied and are checked against the preset's constraints.
/// TFI defaults to gamma=+1 when gamma is not given.
SpinModel model_from_preset(ModelPreset preset, int n, double coupling = -1.0,
                            double field = 0.5,
                            std::optional<double> gamma = std::nullopt,
                            std::optional<double> delta = std::nullopt);

/// Checks structural bounds (n, |gamma| <= 1) and, when a preset is present,
/// the preset's anisotropy constraints. Throws ValidationError / ConfigError.
/// A sweep suspends the preset constraint on its swept parameter by passing
/// the matching enforce flag as false; structural bounds always apply.
void validate_model(const SpinModel& model, bool enforce_gamma = true, bool enforce_delta = true);

using HamiltonianMatrix = Eigen::MatrixXd;

/// Dense real symmetric matrix of the chain Hamiltonian, dimension 2^n.
HamiltonianMatrix build_hamiltonian(const SpinModel& model);

/// Full eigendecomposition: ascending eigenvalues, orthonormal columns.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

Spectrum compute_spectrum(const HamiltonianMatrix& hamiltonian);

/// <psi|H|psi> evaluated bond-by-bond in O(n 2^n), without the dense matrix.
/// Agrees with expectation(state, build_hamiltonian(model)) to 1e-12.
double chain_energy(const Statevector& state, const SpinModel& model);

}  // namespace qbopt
