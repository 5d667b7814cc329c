#include "qbopt/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbopt/errors.hpp"

namespace qbopt {

namespace {

void check_config(const OptimizerConfig& config) {
  if (!(config.step_size > 0.0)) throw ArgumentError("optimizer: step_size must be positive");
  if (config.max_iters < 1) throw ArgumentError("optimizer: max_iters must be at least 1");
  if (!(config.convergence_tol > 0.0))
    throw ArgumentError("optimizer: convergence_tol must be positive");
  if (config.convergence_window < 1)
    throw ArgumentError("optimizer: convergence_window must be at least 1");
  if (!(config.fd_epsilon > 0.0)) throw ArgumentError("optimizer: fd_epsilon must be positive");
}

}  // namespace

std::vector<double> work_gradient(const WorkFunction& work, std::span<const double> theta,
                                  const OptimizerConfig& config) {
  check_config(config);
  if (static_cast<int>(theta.size()) != work.param_count()) {
    throw ArgumentError("work_gradient: got " + std::to_string(theta.size()) +
                        " parameters, expected " + std::to_string(work.param_count()));
  }
  const double shift = (config.gradient_method == GradientMethod::ParameterShift)
                           ? std::numbers::pi / 4.0
                           : config.fd_epsilon;
  std::vector<double> gradient(theta.size());
  std::vector<double> probe(theta.begin(), theta.end());
  for (std::size_t j = 0; j < theta.size(); ++j) {
    probe[j] = theta[j] + shift;
    const double w_plus = work(probe);
    probe[j] = theta[j] - shift;
    const double w_minus = work(probe);
    probe[j] = theta[j];
    gradient[j] = (config.gradient_method == GradientMethod::ParameterShift)
                      ? w_plus - w_minus
                      : (w_plus - w_minus) / (2.0 * config.fd_epsilon);
  }
  return gradient;
}

OptimizeResult ascend(const WorkFunction& work, std::vector<double> theta0,
                      const OptimizerConfig& config) {
  check_config(config);
  if (static_cast<int>(theta0.size()) != work.param_count()) {
    throw ArgumentError("ascend: got " + std::to_string(theta0.size()) +
                        " parameters, expected " + std::to_string(work.param_count()));
  }

  OptimizeResult result;
  std::vector<double> theta = std::move(theta0);
  double current = work(theta);
  result.work_trajectory.push_back(current);
  result.theta_trajectory.push_back(theta);

  int plateau_run = 0;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const std::vector<double> gradient = work_gradient(work, theta, config);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      theta[j] += config.step_size * gradient[j];
    }
    const double next = work(theta);
    if (!std::isfinite(next)) {
      throw NumericalError("ascend: non-finite work value at iteration " + std::to_string(iter) +
                           " (last finite value " + std::to_string(current) + ")");
    }
    result.work_trajectory.push_back(next);
    result.theta_trajectory.push_back(theta);
    result.iterations = iter;

    plateau_run = (std::abs(next - current) < config.convergence_tol) ? plateau_run + 1 : 0;
    current = next;
    if (plateau_run >= config.convergence_window) {
      result.converged = true;
      break;
    }
  }

  result.theta_opt = std::move(theta);
  result.work_opt = result.work_trajectory.back();
  return result;
}

}  // namespace qbopt
