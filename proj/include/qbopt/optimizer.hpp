#pragma once

#include <span>
#include <vector>

#include "qbopt/ergotropy.hpp"

namespace qbopt {

enum class GradientMethod { ParameterShift, FiniteDifference };

struct OptimizerConfig {
  double step_size = 0.1;
  int max_iters = 500;
  double convergence_tol = 1e-6;
  int convergence_window = 10;
  GradientMethod gradient_method = GradientMethod::ParameterShift;
  double fd_epsilon = 1e-5;
};

struct OptimizeResult {
  std::vector<double> theta_opt;
  double work_opt = 0.0;
  /// Entry 0 is W at the start point; entry i is W after update i.
  std::vector<double> work_trajectory;
  std::vector<std::vector<double>> theta_trajectory;
  bool converged = false;
  int iterations = 0;
};

/// Gradient of W at theta. The parameter-shift form
///   dW/dtheta_j = W(theta + (pi/4) e_j) - W(theta - (pi/4) e_j)
/// is exact for this rotation family (generator eigenvalues +-1, so no
/// prefactor). Finite differences are kept as an independent cross-check.
std::vector<double> work_gradient(const WorkFunction& work, std::span<const double> theta,
                                  const OptimizerConfig& config = {});

/// Fixed-step gradient ascent: theta <- theta + step_size * grad W(theta).
/// Stops when |delta W| stays below convergence_tol for a full window of
/// iterations, or at max_iters. W is recorded every iteration.
OptimizeResult ascend(const WorkFunction& work, std::vector<double> theta0,
                      const OptimizerConfig& config = {});

}  // namespace qbopt
