#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qbopt/ansatz.hpp"
#include "qbopt/hamiltonian.hpp"
#include "qbopt/optimizer.hpp"

namespace qbopt {

/// Statistics over a Monte Carlo ensemble of optimizations. The per-iteration
/// series are padded to the longest trajectory by holding each trial's final
/// value, so every entry aggregates exactly trial_count values. Standard
/// deviations are population deviations (divide by M).
struct TrialEnsemble {
  int trial_count = 0;
  std::uint64_t seed = 0;
  std::vector<double> per_iteration_mean;
  std::vector<double> per_iteration_std;
  double final_mean = 0.0;
  double final_std = 0.0;
  std::vector<double> final_values;
};

/// Runs `trials` independent gradient ascents with start parameters drawn
/// uniformly from [0, pi)^n. Trial t uses its own generator derived from
/// (seed, t), so the ensemble is bit-identical for any worker count.
TrialEnsemble run_trials(const SpinModel& model, Connectivity connectivity, int trials,
                         std::uint64_t seed, const OptimizerConfig& config = {});

enum class SweepAxis { QubitCount, Gamma, Delta };

std::string_view sweep_axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

/// One sweep point: the fully resolved model, the pattern, and the outcome.
struct SweepRecord {
  SpinModel model;
  Connectivity connectivity = Connectivity::NoConnections;
  int trials = 0;
  std::uint64_t seed = 0;  // master seed; per-point streams derive from it
  double ergotropy = 0.0;
  double mean_work = 0.0;
  double std_work = 0.0;
  double eta = 0.0;
};

/// Sweeps one model parameter across `values` for every connectivity given.
/// Every point is validated before any computation starts. Each point draws
/// fresh initializations from (seed, point index, trial index).
std::vector<SweepRecord> run_sweep(const SpinModel& base, const std::vector<Connectivity>& patterns,
                                   SweepAxis axis, const std::vector<double>& values, int trials,
                                   std::uint64_t seed, const OptimizerConfig& config = {});

/// W and its gradient sampled on a resolution x resolution grid over
/// [0, pi]^2 (endpoints included), for two-qubit models only. Values are
/// stored row-major: index = i1 * resolution + i2.
struct LandscapeGrid {
  int resolution = 0;
  std::vector<double> theta1_axis;
  std::vector<double> theta2_axis;
  std::vector<double> work;
  std::vector<double> grad_theta1;
  std::vector<double> grad_theta2;
  std::vector<OptimizeResult> trajectories;
};

LandscapeGrid landscape_grid(const SpinModel& model, Connectivity connectivity, int resolution,
                             const std::vector<std::uint64_t>& trajectory_seeds = {},
                             const OptimizerConfig& config = {});

}  // namespace qbopt
