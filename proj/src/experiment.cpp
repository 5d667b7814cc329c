#include "qbopt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qbopt/ergotropy.hpp"
#include "qbopt/errors.hpp"
#include "qbopt/parallel.hpp"
#include "qbopt/rng.hpp"

namespace qbopt {

namespace {

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
  const double count = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= count;
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  variance /= count;
  return {mean, std::sqrt(std::max(variance, 0.0))};
}

std::vector<double> draw_initial_parameters(SplitMix64& rng, int count) {
  std::vector<double> theta(static_cast<std::size_t>(count));
  for (auto& t : theta) t = rng.uniform(0.0, std::numbers::pi);
  return theta;
}

}  // namespace

TrialEnsemble run_trials(const SpinModel& model, Connectivity connectivity, int trials,
                         std::uint64_t seed, const OptimizerConfig& config) {
  if (trials < 1) {
    throw ArgumentError("run_trials: trial count must be at least 1, got " +
                        std::to_string(trials));
  }
  const Ansatz ansatz = build_ansatz(connectivity, model.n);
  const WorkFunction work(ansatz, Statevector::all_up(model.n), model);

  std::vector<std::vector<double>> trajectories(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_stream(seed, t);
    SplitMix64 rng(trial_seed);
    const std::vector<double> theta0 = draw_initial_parameters(rng, work.param_count());
    try {
      OptimizeResult result = ascend(work, theta0, config);
      trajectories[t] = std::move(result.work_trajectory);
    } catch (const NumericalError& e) {
      throw NumericalError("run_trials: trial " + std::to_string(t) + " (stream seed " +
                           std::to_string(trial_seed) + ") failed: " + e.what());
    }
  });

  TrialEnsemble ensemble;
  ensemble.trial_count = trials;
  ensemble.seed = seed;

  std::size_t longest = 0;
  for (const auto& trajectory : trajectories) longest = std::max(longest, trajectory.size());

  ensemble.per_iteration_mean.resize(longest);
  ensemble.per_iteration_std.resize(longest);
  std::vector<double> column(static_cast<std::size_t>(trials));
  for (std::size_t step = 0; step < longest; ++step) {
    for (std::size_t t = 0; t < trajectories.size(); ++t) {
      const auto& trajectory = trajectories[t];
      column[t] = trajectory[std::min(step, trajectory.size() - 1)];
    }
    const auto [mean, deviation] = mean_and_std(column);
    ensemble.per_iteration_mean[step] = mean;
    ensemble.per_iteration_std[step] = deviation;
  }

  ensemble.final_values.resize(static_cast<std::size_t>(trials));
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    ensemble.final_values[t] = trajectories[t].back();
  }
  const auto [final_mean, final_std] = mean_and_std(ensemble.final_values);
  ensemble.final_mean = final_mean;
  ensemble.final_std = final_std;
  return ensemble;
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::QubitCount: return "n";
    case SweepAxis::Gamma: return "gamma";
    case SweepAxis::Delta: return "delta";
  }
  return "?";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
  if (name == "n") return SweepAxis::QubitCount;
  if (name == "gamma") return SweepAxis::Gamma;
  if (name == "delta") return SweepAxis::Delta;
  return std::nullopt;
}

std::vector<SweepRecord> run_sweep(const SpinModel& base, const std::vector<Connectivity>& patterns,
                                   SweepAxis axis, const std::vector<double>& values, int trials,
                                   std::uint64_t seed, const OptimizerConfig& config) {
  if (patterns.empty()) throw ArgumentError("run_sweep: need at least one connectivity");
  if (values.empty()) throw ArgumentError("run_sweep: need at least one axis value");

  // Resolve and validate every point up front. The preset constraint on the
  // swept parameter itself is suspended so a sweep may cross preset
  // boundaries (e.g. gamma driven to +-1); structural bounds still apply.
  std::vector<SpinModel> points;
  points.reserve(values.size());
  for (double value : values) {
    SpinModel point = base;
    switch (axis) {
      case SweepAxis::QubitCount: {
        const double rounded = std::round(value);
        if (std::abs(value - rounded) > 1e-9) {
          throw ValidationError("run_sweep: axis 'n' needs integer values, got " +
                                std::to_string(value));
        }
        point.n = static_cast<int>(rounded);
        validate_model(point);
        break;
      }
      case SweepAxis::Gamma:
        point.gamma = value;
        validate_model(point, /*enforce_gamma=*/false, /*enforce_delta=*/true);
        break;
      case SweepAxis::Delta:
        point.delta = value;
        validate_model(point, /*enforce_gamma=*/true, /*enforce_delta=*/false);
        break;
    }
    points.push_back(point);
  }

  std::vector<SweepRecord> records;
  records.reserve(patterns.size() * points.size());
  std::uint64_t point_index = 0;

  // Ergotropy depends on the model only; cache per axis value.
  std::vector<double> ergotropies(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const HamiltonianMatrix hamiltonian = build_hamiltonian(points[i]);
    const Spectrum spectrum = compute_spectrum(hamiltonian);
    const WorkReport report =
        compute_ergotropy(pure_density(Statevector::all_up(points[i].n)), hamiltonian, spectrum);
    ergotropies[i] = report.ergotropy;
  }

  for (Connectivity pattern : patterns) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const TrialEnsemble ensemble =
          run_trials(points[i], pattern, trials, derive_stream(seed, point_index), config);
      SweepRecord record;
      record.model = points[i];
      record.connectivity = pattern;
      record.trials = trials;
      record.seed = seed;
      record.ergotropy = ergotropies[i];
      record.mean_work = ensemble.final_mean;
      record.std_work = ensemble.final_std;
      record.eta = efficiency(ensemble.final_mean, ergotropies[i]);
      records.push_back(std::move(record));
      ++point_index;
    }
  }
  return records;
}

LandscapeGrid landscape_grid(const SpinModel& model, Connectivity connectivity, int resolution,
                             const std::vector<std::uint64_t>& trajectory_seeds,
                             const OptimizerConfig& config) {
  if (model.n != 2) {
    throw ArgumentError("landscape_grid: two-parameter landscapes need n=2, got n=" +
                        std::to_string(model.n));
  }
  if (resolution < 2) {
    throw ArgumentError("landscape_grid: resolution must be at least 2");
  }
  const Ansatz ansatz = build_ansatz(connectivity, model.n);
  const WorkFunction work(ansatz, Statevector::all_up(model.n), model);

  LandscapeGrid grid;
  grid.resolution = resolution;
  grid.theta1_axis.resize(static_cast<std::size_t>(resolution));
  grid.theta2_axis.resize(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double value = std::numbers::pi * i / (resolution - 1);
    grid.theta1_axis[static_cast<std::size_t>(i)] = value;
    grid.theta2_axis[static_cast<std::size_t>(i)] = value;
  }

  const std::size_t cells = static_cast<std::size_t>(resolution) * resolution;
  grid.work.resize(cells);
  grid.grad_theta1.resize(cells);
  grid.grad_theta2.resize(cells);
  parallel_for(static_cast<std::size_t>(resolution), [&](std::size_t i1) {
    for (std::size_t i2 = 0; i2 < static_cast<std::size_t>(resolution); ++i2) {
      const double theta[2] = {grid.theta1_axis[i1], grid.theta2_axis[i2]};
      const std::size_t cell = i1 * static_cast<std::size_t>(resolution) + i2;
      grid.work[cell] = work(theta);
      const std::vector<double> gradient = work_gradient(work, theta, config);
      grid.grad_theta1[cell] = gradient[0];
      grid.grad_theta2[cell] = gradient[1];
    }
  });

  grid.trajectories.reserve(trajectory_seeds.size());
  for (std::uint64_t trajectory_seed : trajectory_seeds) {
    SplitMix64 rng(trajectory_seed);
    grid.trajectories.push_back(ascend(work, draw_initial_parameters(rng, 2), config));
  }
  return grid;
}

}  // namespace qbopt
