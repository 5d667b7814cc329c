#include "qbopt/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qbopt/ergotropy.hpp"
#include "qbopt/errors.hpp"
#include "qbopt/rng.hpp"

namespace qbopt {

namespace {

using nlohmann::json;

std::string connectivity_list(const std::vector<Connectivity>& patterns) {
  std::string joined;
  for (const Connectivity pattern : patterns) {
    if (!joined.empty()) joined += ",";
    joined += connectivity_tag(pattern);
  }
  return joined;
}

std::string gradient_name(GradientMethod method) {
  return method == GradientMethod::ParameterShift ? "parameter-shift" : "finite-difference";
}

/// Comment block repeated at the top of every CSV so the file alone is enough
/// to re-run its experiment. Worker count is deliberately absent: it never
/// affects results.
std::string config_echo(const std::string& command, const SpinModel& model,
                        const RunConfig& config, const std::vector<Connectivity>& patterns,
                        const std::string& extra = {}) {
  std::ostringstream echo;
  echo << "# qbopt " << command << "\n";
  echo << "# model=" << (model.preset ? preset_name(*model.preset) : "custom")
       << " n=" << model.n << " J=" << format_double(model.coupling)
       << " h=" << format_double(model.field) << " gamma=" << format_double(model.gamma)
       << " delta=" << format_double(model.delta) << "\n";
  echo << "# ansatz=" << connectivity_list(patterns) << " trials=" << config.trials
       << " seed=" << config.seed << "\n";
  echo << "# step-size=" << format_double(config.optimizer.step_size)
       << " max-iters=" << config.optimizer.max_iters
       << " tol=" << format_double(config.optimizer.convergence_tol)
       << " window=" << config.optimizer.convergence_window
       << " gradient=" << gradient_name(config.optimizer.gradient_method)
       << " fd-epsilon=" << format_double(config.optimizer.fd_epsilon) << "\n";
  if (!extra.empty()) echo << "# " << extra << "\n";
  return echo.str();
}

json config_json(const SpinModel& model, const RunConfig& config,
                 const std::vector<Connectivity>& patterns) {
  return json{{"model", model.preset ? preset_name(*model.preset) : "custom"},
              {"n", model.n},
              {"J", model.coupling},
              {"h", model.field},
              {"gamma", model.gamma},
              {"delta", model.delta},
              {"ansatz", connectivity_list(patterns)},
              {"trials", config.trials},
              {"seed", config.seed},
              {"step_size", config.optimizer.step_size},
              {"max_iters", config.optimizer.max_iters},
              {"tol", config.optimizer.convergence_tol},
              {"window", config.optimizer.convergence_window},
              {"gradient", gradient_name(config.optimizer.gradient_method)},
              {"fd_epsilon", config.optimizer.fd_epsilon},
              {"seed_derivation",
               "trial t uses stream (seed, t); sweep point p uses ((seed, p), t)"}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  file << content;
  file.flush();
  if (!file.good()) {
    file.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw IoError("failed while writing '" + path + "' (partial file removed)");
  }
}

/// Writes each (path, content) pair; if any write fails, every file already
/// written by this call is removed before the error propagates.
void write_files_or_clean_up(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<std::string> written;
  try {
    for (const auto& [path, content] : files) {
      write_text_file(path, content);
      written.push_back(path);
    }
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    throw;
  }
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::size_t dot = path.find_last_of('.');
  const std::size_t slash = path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

Connectivity single_connectivity(const RunConfig& config, const char* command) {
  if (config.connectivities.empty()) return Connectivity::NoConnections;
  if (config.connectivities.size() > 1) {
    throw ConfigError(std::string(command) + " takes a single --ansatz, got " +
                      std::to_string(config.connectivities.size()));
  }
  return config.connectivities.front();
}

std::vector<double> sweep_values(double from, double to, double step) {
  if (step == 0.0) throw ConfigError("sweep: --step must be nonzero");
  const double span = to - from;
  if (span * step < 0.0) {
    throw ConfigError("sweep: --step direction does not reach --to from --from");
  }
  const auto count = static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1;
  if (count > 10000) throw ConfigError("sweep: range produces more than 10000 points");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = from + static_cast<double>(i) * step;
  return values;
}

struct ValidateCheck {
  std::string name;
  double measured;
  double limit;
  bool passed;
};

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

SpinModel resolve_model(const RunConfig& config) {
  if (!config.preset) {
    throw ConfigError("--model is required (one of xxx, xxz, xyz, xx, xy, tfi)");
  }
  return model_from_preset(*config.preset, config.n, config.coupling, config.field, config.gamma,
                           config.delta);
}

void cmd_ergotropy(const RunConfig& config, std::ostream& out) {
  const SpinModel model = resolve_model(config);
  const HamiltonianMatrix hamiltonian = build_hamiltonian(model);
  const Spectrum spectrum = compute_spectrum(hamiltonian);
  const Statevector input = Statevector::all_up(model.n);
  const WorkReport report = compute_ergotropy(pure_density(input), hamiltonian, spectrum);

  out << "model: " << (model.preset ? preset_name(*model.preset) : "custom") << "  n=" << model.n
      << "  J=" << format_double(model.coupling) << "  h=" << format_double(model.field)
      << "  gamma=" << format_double(model.gamma) << "  delta=" << format_double(model.delta)
      << "\n";
  out << "input energy:   " << format_double(report.mean_energy) << "\n";
  out << "ground energy:  " << format_double(spectrum.eigenvalues[0]) << "\n";
  out << "passive energy: " << format_double(report.passive_energy) << "\n";
  out << "ergotropy:      " << format_double(report.ergotropy) << "\n";
  out << "spectrum:";
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    out << (i ? "," : "") << " " << format_double(spectrum.eigenvalues[i]);
  }
  out << "\n";

  if (!config.out_path.empty()) {
    json doc;
    doc["command"] = "ergotropy";
    doc["config"] = config_json(model, config, {});
    doc["input_energy"] = report.mean_energy;
    doc["ground_energy"] = spectrum.eigenvalues[0];
    doc["passive_energy"] = report.passive_energy;
    doc["ergotropy"] = report.ergotropy;
    doc["spectrum"] = std::vector<double>(spectrum.eigenvalues.data(),
                                          spectrum.eigenvalues.data() + spectrum.eigenvalues.size());
    write_text_file(config.out_path, doc.dump(2) + "\n");
    out << "wrote " << config.out_path << "\n";
  }
}

void cmd_optimize(const RunConfig& config, std::ostream& out) {
  const SpinModel model = resolve_model(config);
  const Connectivity pattern = single_connectivity(config, "optimize");

  const TrialEnsemble ensemble =
      run_trials(model, pattern, config.trials, config.seed, config.optimizer);
  const HamiltonianMatrix hamiltonian = build_hamiltonian(model);
  const Spectrum spectrum = compute_spectrum(hamiltonian);
  const WorkReport report =
      compute_ergotropy(pure_density(Statevector::all_up(model.n)), hamiltonian, spectrum);
  const double eta = efficiency(ensemble.final_mean, report.ergotropy);

  std::ostringstream csv;
  csv << config_echo("optimize", model, config, {pattern});
  csv << "iteration,mean_W,std_W\n";
  for (std::size_t step = 0; step < ensemble.per_iteration_mean.size(); ++step) {
    csv << step << "," << format_double(ensemble.per_iteration_mean[step]) << ","
        << format_double(ensemble.per_iteration_std[step]) << "\n";
  }

  json summary;
  summary["command"] = "optimize";
  summary["config"] = config_json(model, config, {pattern});
  summary["final_mean"] = ensemble.final_mean;
  summary["final_std"] = ensemble.final_std;
  summary["ergotropy"] = report.ergotropy;
  summary["efficiency"] = eta;
  summary["seed"] = ensemble.seed;
  summary["iterations_recorded"] = ensemble.per_iteration_mean.size();
  const std::string summary_text = summary.dump(2) + "\n";

  if (config.out_path.empty()) {
    out << summary_text;
    return;
  }
  const std::string csv_path = config.out_path + "_convergence.csv";
  const std::string json_path = config.out_path + "_summary.json";
  write_files_or_clean_up({{csv_path, csv.str()}, {json_path, summary_text}});
  out << "final_mean=" << format_double(ensemble.final_mean)
      << " final_std=" << format_double(ensemble.final_std)
      << " ergotropy=" << format_double(report.ergotropy) << " efficiency=" << format_double(eta)
      << "\n";
  out << "wrote " << csv_path << " and " << json_path << "\n";
}

void cmd_sweep(const RunConfig& config, std::ostream& out) {
  if (!config.axis) {
    throw ConfigError("sweep: --axis is required (n, gamma, or delta)");
  }
  if (!config.preset) {
    throw ConfigError("--model is required (one of xxx, xxz, xyz, xx, xy, tfi)");
  }

  // The swept anisotropy may be absent from the flags; presets that demand it
  // get a placeholder that each sweep point overrides.
  std::optional<double> gamma = config.gamma;
  std::optional<double> delta = config.delta;
  const bool needs_gamma =
      *config.preset == ModelPreset::XY || *config.preset == ModelPreset::XYZ;
  const bool needs_delta =
      *config.preset == ModelPreset::XXZ || *config.preset == ModelPreset::XYZ;
  if (*config.axis == SweepAxis::Gamma && !gamma && needs_gamma) gamma = 0.0;
  if (*config.axis == SweepAxis::Delta && !delta && needs_delta) delta = 1.0;

  const SpinModel base = model_from_preset(*config.preset, config.n, config.coupling,
                                           config.field, gamma, delta);
  const std::vector<Connectivity> patterns =
      config.connectivities.empty()
          ? std::vector<Connectivity>(kAllConnectivities.begin(), kAllConnectivities.end())
          : config.connectivities;
  const std::vector<double> values =
      sweep_values(config.sweep_from, config.sweep_to, config.sweep_step);

  const std::vector<SweepRecord> records =
      run_sweep(base, patterns, *config.axis, values, config.trials, config.seed,
                config.optimizer);

  std::string text;
  if (config.format == OutputFormat::Csv) {
    std::ostringstream csv;
    csv << config_echo("sweep", base, config, patterns,
                       "axis=" + std::string(sweep_axis_name(*config.axis)) +
                           " from=" + format_double(config.sweep_from) +
                           " to=" + format_double(config.sweep_to) +
                           " step=" + format_double(config.sweep_step));
    csv << "preset,n,J,h,gamma,delta,connectivity,M,seed,ergotropy,mean_work,std_work,eta\n";
    for (const SweepRecord& record : records) {
      csv << (record.model.preset ? preset_name(*record.model.preset) : "custom") << ","
          << record.model.n << "," << format_double(record.model.coupling) << ","
          << format_double(record.model.field) << "," << format_double(record.model.gamma) << ","
          << format_double(record.model.delta) << "," << connectivity_tag(record.connectivity)
          << "," << record.trials << "," << record.seed << ","
          << format_double(record.ergotropy) << "," << format_double(record.mean_work) << ","
          << format_double(record.std_work) << "," << format_double(record.eta) << "\n";
    }
    text = csv.str();
  } else {
    json doc;
    doc["command"] = "sweep";
    doc["config"] = config_json(base, config, patterns);
    doc["axis"] = sweep_axis_name(*config.axis);
    doc["records"] = json::array();
    for (const SweepRecord& record : records) {
      doc["records"].push_back(
          {{"preset", record.model.preset ? preset_name(*record.model.preset) : "custom"},
           {"n", record.model.n},
           {"J", record.model.coupling},
           {"h", record.model.field},
           {"gamma", record.model.gamma},
           {"delta", record.model.delta},
           {"connectivity", connectivity_tag(record.connectivity)},
           {"M", record.trials},
           {"seed", record.seed},
           {"ergotropy", record.ergotropy},
           {"mean_work", record.mean_work},
           {"std_work", record.std_work},
           {"eta", record.eta}});
    }
    text = doc.dump(2) + "\n";
  }

  if (config.out_path.empty()) {
    out << text;
  } else {
    write_text_file(config.out_path, text);
    out << "wrote " << config.out_path << " (" << records.size() << " records)\n";
  }
}

void cmd_landscape(const RunConfig& config, std::ostream& out) {
  const SpinModel model = resolve_model(config);
  if (model.n != 2) {
    throw ConfigError("landscape: two-parameter landscapes need --n 2, got " +
                      std::to_string(model.n));
  }
  const Connectivity pattern = single_connectivity(config, "landscape");
  if (config.trajectory_count > 0 && config.out_path.empty()) {
    throw ConfigError("landscape: --trajectories needs --out");
  }

  std::vector<std::uint64_t> trajectory_seeds;
  for (int k = 0; k < config.trajectory_count; ++k) {
    trajectory_seeds.push_back(derive_stream(config.seed, static_cast<std::uint64_t>(k)));
  }
  const LandscapeGrid grid = landscape_grid(model, pattern, config.grid_resolution,
                                            trajectory_seeds, config.optimizer);

  std::ostringstream csv;
  csv << config_echo("landscape", model, config, {pattern},
                     "grid=" + std::to_string(config.grid_resolution) +
                         " trajectories=" + std::to_string(config.trajectory_count));
  csv << "theta1,theta2,W,grad1,grad2\n";
  const auto resolution = static_cast<std::size_t>(grid.resolution);
  for (std::size_t i1 = 0; i1 < resolution; ++i1) {
    for (std::size_t i2 = 0; i2 < resolution; ++i2) {
      const std::size_t cell = i1 * resolution + i2;
      csv << format_double(grid.theta1_axis[i1]) << "," << format_double(grid.theta2_axis[i2])
          << "," << format_double(grid.work[cell]) << "," << format_double(grid.grad_theta1[cell])
          << "," << format_double(grid.grad_theta2[cell]) << "\n";
    }
  }

  if (config.out_path.empty()) {
    out << csv.str();
    return;
  }

  std::vector<std::pair<std::string, std::string>> files{{config.out_path, csv.str()}};
  if (config.trajectory_count > 0) {
    std::ostringstream traj;
    traj << config_echo("landscape", model, config, {pattern},
                        "grid=" + std::to_string(config.grid_resolution) +
                            " trajectories=" + std::to_string(config.trajectory_count));
    traj << "trajectory_id,step,theta1,theta2,W\n";
    for (std::size_t id = 0; id < grid.trajectories.size(); ++id) {
      const OptimizeResult& result = grid.trajectories[id];
      for (std::size_t step = 0; step < result.work_trajectory.size(); ++step) {
        traj << id << "," << step << "," << format_double(result.theta_trajectory[step][0]) << ","
             << format_double(result.theta_trajectory[step][1]) << ","
             << format_double(result.work_trajectory[step]) << "\n";
      }
    }
    files.emplace_back(sibling_path(config.out_path, "_trajectories"), traj.str());
  }
  write_files_or_clean_up(files);
  out << "wrote " << files.front().first;
  if (files.size() > 1) out << " and " << files.back().first;
  out << "\n";
}

bool cmd_validate(const RunConfig& config, std::ostream& out, bool inject_field_sign_flip) {
  (void)config;
  std::vector<ValidateCheck> checks;
  const double field = inject_field_sign_flip ? -0.5 : 0.5;

  SpinModel xx;
  xx.n = 2;
  xx.coupling = -1.0;
  xx.field = field;
  xx.preset = ModelPreset::XX;
  const HamiltonianMatrix hamiltonian = build_hamiltonian(xx);
  const Spectrum spectrum = compute_spectrum(hamiltonian);

  {
    // Spectrum {-2,-1,1,2}; |down,down> sits at -1, |up,up> at +1, and the
    // ground state is the singlet.
    const double expected[4] = {-2.0, -1.0, 1.0, 2.0};
    double measured = 0.0;
    for (int i = 0; i < 4; ++i) {
      measured = std::max(measured, std::abs(spectrum.eigenvalues[i] - expected[i]));
    }
    measured = std::max(measured, std::abs(hamiltonian(0, 0) - (-1.0)));  // |down,down>
    measured = std::max(measured, std::abs(hamiltonian(3, 3) - 1.0));     // |up,up>
    const double overlap = (spectrum.eigenvectors(1, 0) - spectrum.eigenvectors(2, 0)) /
                           std::numbers::sqrt2;
    measured = std::max(measured, std::abs(overlap * overlap - 1.0));
    checks.push_back({"xx-spectrum", measured, 1e-9, measured < 1e-9});
  }
  {
    const Statevector input = Statevector::all_up(2);
    const WorkReport report = compute_ergotropy(pure_density(input), hamiltonian, spectrum);
    const double measured =
        std::max(std::abs(report.mean_energy - 1.0), std::abs(report.ergotropy - 3.0));
    checks.push_back({"ergotropy-pin", measured, 1e-9, measured < 1e-9});
  }
  {
    SpinModel xxz;
    xxz.n = 3;
    xxz.field = field;
    xxz.delta = 0.5;
    xxz.preset = ModelPreset::XXZ;
    const WorkFunction work(build_ansatz(Connectivity::Ring, 3), Statevector::all_up(3), xxz);
    SplitMix64 rng(20240901);
    std::vector<double> theta(3);
    for (auto& t : theta) t = rng.uniform(0.0, std::numbers::pi);
    OptimizerConfig shift_config;
    OptimizerConfig fd_config;
    fd_config.gradient_method = GradientMethod::FiniteDifference;
    const auto shift_grad = work_gradient(work, theta, shift_config);
    const auto fd_grad = work_gradient(work, theta, fd_config);
    double measured = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      measured = std::max(measured, std::abs(shift_grad[j] - fd_grad[j]));
    }
    checks.push_back({"gradient-cross-check", measured, 1e-6, measured < 1e-6});
  }
  {
    Statevector state = Statevector::all_up(5);
    SplitMix64 rng(777);
    for (int g = 0; g < 100; ++g) {
      if (rng.next() % 2 == 0) {
        state.apply_ry(1 + static_cast<int>(rng.next() % 5), rng.uniform(0.0, 2 * std::numbers::pi));
      } else {
        const int control = 1 + static_cast<int>(rng.next() % 5);
        int target = 1 + static_cast<int>(rng.next() % 5);
        if (target == control) target = (target % 5) + 1;
        state.apply_cnot(control, target);
      }
    }
    const double measured = std::abs(1.0 - state.norm() * state.norm());
    checks.push_back({"norm-preservation", measured, 1e-10, measured < 1e-10});
  }

  bool all_passed = true;
  out << "check                  measured                 limit    status\n";
  for (const ValidateCheck& check : checks) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-22s %-24.3e %-8.0e %s\n", check.name.c_str(),
                  check.measured, check.limit, check.passed ? "PASS" : "FAIL");
    out << line;
    all_passed = all_passed && check.passed;
  }
  out << (all_passed ? "all checks passed\n" : "CHECKS FAILED\n");
  return all_passed;
}

}  // namespace qbopt
