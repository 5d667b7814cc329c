#include "qbopt/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qbopt/errors.hpp"

namespace qbopt {

namespace {

constexpr double kAnisotropyEps = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kAnisotropyEps; }

[[noreturn]] void preset_violation(ModelPreset preset, const std::string& detail) {
  throw ValidationError("model '" + std::string(preset_name(preset)) +
                        "' constraint violated: " + detail);
}

}  // namespace

std::string_view preset_name(ModelPreset preset) {
  switch (preset) {
    case ModelPreset::XXX: return "xxx";
    case ModelPreset::XXZ: return "xxz";
    case ModelPreset::XYZ: return "xyz";
    case ModelPreset::XX: return "xx";
    case ModelPreset::XY: return "xy";
    case ModelPreset::TFI: return "tfi";
  }
  return "?";
}

std::optional<ModelPreset> parse_preset(std::string_view name) {
  if (name == "xxx") return ModelPreset::XXX;
  if (name == "xxz") return ModelPreset::XXZ;
  if (name == "xyz") return ModelPreset::XYZ;
  if (name == "xx") return ModelPreset::XX;
  if (name == "xy") return ModelPreset::XY;
  if (name == "tfi") return ModelPreset::TFI;
  return std::nullopt;
}

SpinModel model_from_preset(ModelPreset preset, int n, double coupling, double field,
                            std::optional<double> gamma, std::optional<double> delta) {
  SpinModel model;
  model.n = n;
  model.coupling = coupling;
  model.field = field;
  model.preset = preset;

  switch (preset) {
    case ModelPreset::XXX:
      model.gamma = gamma.value_or(0.0);
      model.delta = delta.value_or(1.0);
      break;
    case ModelPreset::XXZ:
      model.gamma = gamma.value_or(0.0);
      if (!delta) preset_violation(preset, "delta must be supplied (any nonzero value)");
      model.delta = *delta;
      break;
    case ModelPreset::XYZ:
      if (!gamma) preset_violation(preset, "gamma must be supplied (-1 < gamma < 1)");
      if (!delta) preset_violation(preset, "delta must be supplied (any nonzero value)");
      model.gamma = *gamma;
      model.delta = *delta;
      break;
    case ModelPreset::XX:
      model.gamma = gamma.value_or(0.0);
      model.delta = delta.value_or(0.0);
      break;
    case ModelPreset::XY:
      if (!gamma) preset_violation(preset, "gamma must be supplied (-1 < gamma < 1)");
      model.gamma = *gamma;
      model.delta = delta.value_or(0.0);
      break;
    case ModelPreset::TFI:
      model.gamma = gamma.value_or(1.0);
      model.delta = delta.value_or(0.0);
      break;
  }

  validate_model(model);
  return model;
}

void validate_model(const SpinModel& model, bool enforce_gamma, bool enforce_delta) {
  if (model.n < 2) {
    throw ConfigError("spin chain needs at least 2 qubits, got " + std::to_string(model.n));
  }
  if (model.n > kMaxQubits) {
    throw ConfigError("spin chain of " + std::to_string(model.n) +
                      " qubits exceeds the supported maximum of " + std::to_string(kMaxQubits));
  }
  if (std::abs(model.gamma) > 1.0 + kAnisotropyEps) {
    throw ConfigError("gamma must lie in [-1, 1], got " + std::to_string(model.gamma));
  }
  if (!model.preset) return;

  const double g = model.gamma;
  const double d = model.delta;
  auto fail_gamma = [&](const std::string& expected) {
    preset_violation(*model.preset, "gamma must be " + expected + ", got " + std::to_string(g));
  };
  auto fail_delta = [&](const std::string& expected) {
    preset_violation(*model.preset, "delta must be " + expected + ", got " + std::to_string(d));
  };
  switch (*model.preset) {
    case ModelPreset::XXX:
      if (enforce_gamma && !near(g, 0.0)) fail_gamma("0");
      if (enforce_delta && !near(d, 1.0)) fail_delta("1");
      break;
    case ModelPreset::XXZ:
      if (enforce_gamma && !near(g, 0.0)) fail_gamma("0");
      if (enforce_delta && near(d, 0.0)) fail_delta("nonzero");
      break;
    case ModelPreset::XYZ:
      if (enforce_gamma && std::abs(g) >= 1.0 - kAnisotropyEps) fail_gamma("inside (-1, 1)");
      if (enforce_delta && near(d, 0.0)) fail_delta("nonzero");
      break;
    case ModelPreset::XX:
      if (enforce_gamma && !near(g, 0.0)) fail_gamma("0");
      if (enforce_delta && !near(d, 0.0)) fail_delta("0");
      break;
    case ModelPreset::XY:
      if (enforce_gamma && std::abs(g) >= 1.0 - kAnisotropyEps) fail_gamma("inside (-1, 1)");
      if (enforce_delta && !near(d, 0.0)) fail_delta("0");
      break;
    case ModelPreset::TFI:
      if (enforce_gamma && !near(std::abs(g), 1.0)) fail_gamma("+1 or -1");
      if (enforce_delta && !near(d, 0.0)) fail_delta("0");
      break;
  }
}

HamiltonianMatrix build_hamiltonian(const SpinModel& model) {
  if (model.n < 2) {
    throw ConfigError("build_hamiltonian: spin chain needs at least 2 qubits, got " +
                      std::to_string(model.n));
  }
  if (model.n > kMaxQubits) {
    throw ConfigError("build_hamiltonian: qubit count " + std::to_string(model.n) +
                      " above supported maximum " + std::to_string(kMaxQubits));
  }
  if (std::abs(model.gamma) > 1.0 + kAnisotropyEps) {
    throw ConfigError("build_hamiltonian: gamma must lie in [-1, 1]");
  }

  const int n = model.n;
  const std::size_t dim = std::size_t{1} << n;
  HamiltonianMatrix hamiltonian = HamiltonianMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                          static_cast<Eigen::Index>(dim));

  // Diagonal: field term plus the zz part of every bond.
  for (std::size_t i = 0; i < dim; ++i) {
    const double z_total = n - 2.0 * std::popcount(i);
    double zz = 0.0;
    for (int b = 0; b + 1 < n; ++b) {
      const bool equal = (((i >> b) ^ (i >> (b + 1))) & 1) == 0;
      zz += equal ? 1.0 : -1.0;
    }
    hamiltonian(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        -model.field * z_total - model.coupling * model.delta * zz;
  }

  // Off-diagonal: the xx/yy part flips both bits of a bond. Matrix element is
  // 2*gamma when the bond bits agree and 2 when they differ.
  for (int b = 0; b + 1 < n; ++b) {
    const std::size_t both = (std::size_t{3}) << b;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t partner = i ^ both;
      const bool equal = (((i >> b) ^ (i >> (b + 1))) & 1) == 0;
      const double element = equal ? 2.0 * model.gamma : 2.0;
      hamiltonian(static_cast<Eigen::Index>(partner), static_cast<Eigen::Index>(i)) +=
          -model.coupling * element;
    }
  }

  return hamiltonian;
}

Spectrum compute_spectrum(const HamiltonianMatrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw ArgumentError("compute_spectrum: matrix must be square");
  }
  const double asym = (hamiltonian - hamiltonian.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9) {
    throw ArgumentError("compute_spectrum: matrix is not symmetric (max asymmetry " +
                        std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("compute_spectrum: eigensolver failed to converge on a " +
                         std::to_string(hamiltonian.rows()) + "-dimensional matrix (info=" +
                         std::to_string(static_cast<int>(solver.info())) + ")");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

double chain_energy(const Statevector& state, const SpinModel& model) {
  if (state.num_qubits() != model.n) {
    throw ArgumentError("chain_energy: state has " + std::to_string(state.num_qubits()) +
                        " qubits, model has " + std::to_string(model.n));
  }
  const auto& amps = state.amplitudes();
  const std::size_t dim = amps.size();
  const int n = model.n;

  double z_total = 0.0;
  double zz_total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    z_total += p * (n - 2.0 * std::popcount(i));
    double zz = 0.0;
    for (int b = 0; b + 1 < n; ++b) {
      const bool equal = (((i >> b) ^ (i >> (b + 1))) & 1) == 0;
      zz += equal ? 1.0 : -1.0;
    }
    zz_total += p * zz;
  }

  double flip_total = 0.0;
  for (int b = 0; b + 1 < n; ++b) {
    const std::size_t both = (std::size_t{3}) << b;
    const std::size_t low = std::size_t{1} << b;
    double bond = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & low) continue;  // visit each flipped pair once
      const bool equal = ((i >> (b + 1)) & 1) == 0;
      const double element = equal ? 2.0 * model.gamma : 2.0;
      if (element == 0.0) continue;
      const std::complex<double> cross = std::conj(amps[i]) * amps[i ^ both];
      bond += 2.0 * element * cross.real();
    }
    flip_total += bond;
  }

  return -model.field * z_total - model.coupling * (flip_total + model.delta * zz_total);
}

}  // namespace qbopt
