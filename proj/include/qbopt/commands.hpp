#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbopt/experiment.hpp"

namespace qbopt {

enum class OutputFormat { Csv, Json };

/// Everything a command run needs, filled in by the CLI front end.
struct RunConfig {
  std::optional<ModelPreset> preset;
  int n = 2;
  double coupling = -1.0;
  double field = 0.5;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::vector<Connectivity> connectivities;
  int trials = 2000;
  std::uint64_t seed = 1;
  OptimizerConfig optimizer;
  std::optional<SweepAxis> axis;
  double sweep_from = 0.0;
  double sweep_to = 0.0;
  double sweep_step = 0.0;
  int grid_resolution = 101;
  int trajectory_count = 0;
  std::string out_path;
  OutputFormat format = OutputFormat::Csv;
};

/// Model from preset plus overrides; throws when --model is missing or the
/// overrides contradict the preset.
SpinModel resolve_model(const RunConfig& config);

/// Prints the work report and spectrum; writes a JSON report when --out is set.
void cmd_ergotropy(const RunConfig& config, std::ostream& out);

/// Runs the trial ensemble for one ansatz. With --out <base> writes
/// <base>_convergence.csv and <base>_summary.json; otherwise prints the
/// summary JSON. On an I/O failure every file of this run is removed.
void cmd_optimize(const RunConfig& config, std::ostream& out);

/// Sweeps n, gamma, or delta and emits one record per (ansatz, value).
void cmd_sweep(const RunConfig& config, std::ostream& out);

/// Samples W and its gradient on a [0, pi]^2 grid (n=2 models only); optional
/// ascent trajectories go to a sibling _trajectories.csv file.
void cmd_landscape(const RunConfig& config, std::ostream& out);

/// Built-in sanity suite; returns true when every check passes.
/// inject_field_sign_flip is a test hook that flips h to prove the checks
/// actually fire.
bool cmd_validate(const RunConfig& config, std::ostream& out,
                  bool inject_field_sign_flip = false);

/// 17 significant digits, round-trip exact for doubles.
std::string format_double(double value);

}  // namespace qbopt
