#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qbopt/commands.hpp"
#include "qbopt/errors.hpp"

namespace {

struct CliState {
  qbopt::RunConfig config;
  std::string model_name;
  std::vector<std::string> ansatz_tags;
  std::string axis_name;
  std::string format_name = "csv";
  std::string gradient_name = "parameter-shift";
  double gamma_value = 0.0;
  double delta_value = 0.0;
  std::vector<CLI::Option*> gamma_options;
  std::vector<CLI::Option*> delta_options;
  bool inject_field_sign_flip = false;
};

void add_model_options(CLI::App* cmd, CliState& state) {
  cmd->add_option("--model", state.model_name, "Model preset: xxx, xxz, xyz, xx, xy, tfi")
      ->required();
  cmd->add_option("--n", state.config.n, "Qubit count (default 2)");
  cmd->add_option("--j", state.config.coupling, "Coupling J in a.u. (default -1.0)");
  cmd->add_option("--h", state.config.field, "Field h in a.u. (default 0.5)");
  state.gamma_options.push_back(
      cmd->add_option("--gamma", state.gamma_value, "Anisotropy gamma in [-1, 1]"));
  state.delta_options.push_back(cmd->add_option("--delta", state.delta_value, "Anisotropy delta"));
}

void add_optimizer_options(CLI::App* cmd, CliState& state) {
  cmd->add_option("--seed", state.config.seed, "Master seed (default 1)");
  cmd->add_option("--step-size", state.config.optimizer.step_size,
                  "Gradient-ascent step size k (default 0.1)");
  cmd->add_option("--max-iters", state.config.optimizer.max_iters,
                  "Iteration cap per trial (default 500)");
  cmd->add_option("--tol", state.config.optimizer.convergence_tol,
                  "Convergence tolerance on |delta W| (default 1e-6)");
  cmd->add_option("--window", state.config.optimizer.convergence_window,
                  "Plateau window in iterations (default 10)");
  cmd->add_option("--gradient", state.gradient_name, "parameter-shift or finite-difference")
      ->check(CLI::IsMember({"parameter-shift", "finite-difference"}));
  cmd->add_option("--fd-epsilon", state.config.optimizer.fd_epsilon,
                  "Finite-difference epsilon (default 1e-5)");
}

void finalize(CliState& state) {
  if (!state.model_name.empty()) {
    const auto preset = qbopt::parse_preset(state.model_name);
    if (!preset) {
      throw qbopt::ConfigError("unknown model '" + state.model_name +
                               "' (expected xxx, xxz, xyz, xx, xy, or tfi)");
    }
    state.config.preset = preset;
  }
  for (const CLI::Option* option : state.gamma_options) {
    if (option->count() > 0) state.config.gamma = state.gamma_value;
  }
  for (const CLI::Option* option : state.delta_options) {
    if (option->count() > 0) state.config.delta = state.delta_value;
  }
  for (const std::string& tag : state.ansatz_tags) {
    const auto connectivity = qbopt::parse_connectivity(tag);
    if (!connectivity) {
      throw qbopt::ArgumentError("unknown ansatz '" + tag +
                                 "' (expected nc, lin, ring, ota, or ata)");
    }
    state.config.connectivities.push_back(*connectivity);
  }
  if (!state.axis_name.empty()) {
    const auto axis = qbopt::parse_sweep_axis(state.axis_name);
    if (!axis) {
      throw qbopt::ConfigError("unknown axis '" + state.axis_name +
                               "' (expected n, gamma, or delta)");
    }
    state.config.axis = axis;
  }
  state.config.format =
      state.format_name == "json" ? qbopt::OutputFormat::Json : qbopt::OutputFormat::Csv;
  state.config.optimizer.gradient_method = state.gradient_name == "finite-difference"
                                               ? qbopt::GradientMethod::FiniteDifference
                                               : qbopt::GradientMethod::ParameterShift;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qbopt - work extraction from spin-chain quantum batteries.\n"
               "Worker threads come from QBOPT_THREADS (wall time only; results are\n"
               "bit-identical for any worker count)."};
  // The field flag --h needs the short help alias gone.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  CliState state;

  CLI::App* ergotropy = app.add_subcommand(
      "ergotropy", "Exact spectrum, input energy, and ergotropy of a model");
  add_model_options(ergotropy, state);
  ergotropy->add_option("--out", state.config.out_path, "Write a JSON report here");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "Monte Carlo ensemble of gradient ascents for one ansatz");
  add_model_options(optimize, state);
  optimize->add_option("--ansatz", state.ansatz_tags, "Ansatz tag (default nc)");
  optimize->add_option("--trials", state.config.trials, "Ensemble size M (default 2000)");
  add_optimizer_options(optimize, state);
  optimize->add_option("--out", state.config.out_path,
                       "Base path: writes <out>_convergence.csv and <out>_summary.json");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Efficiency sweep over n, gamma, or delta for several ansaetze");
  add_model_options(sweep, state);
  sweep->add_option("--ansatz", state.ansatz_tags,
                    "Ansatz tags, repeatable (default: all five)");
  sweep->add_option("--trials", state.config.trials, "Trials per sweep point (default 2000)");
  add_optimizer_options(sweep, state);
  sweep->add_option("--axis", state.axis_name, "Swept parameter: n, gamma, or delta")->required();
  sweep->add_option("--from", state.config.sweep_from, "First axis value")->required();
  sweep->add_option("--to", state.config.sweep_to, "Last axis value")->required();
  sweep->add_option("--step", state.config.sweep_step, "Axis increment")->required();
  sweep->add_option("--format", state.format_name, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", state.config.out_path, "Output file (default: stdout)");

  CLI::App* landscape = app.add_subcommand(
      "landscape", "Cost landscape and gradient field on [0, pi]^2 (n=2 only)");
  add_model_options(landscape, state);
  landscape->add_option("--ansatz", state.ansatz_tags, "Ansatz tag (default nc)");
  landscape->add_option("--grid", state.config.grid_resolution,
                        "Grid resolution per axis (default 101)");
  landscape->add_option("--trajectories", state.config.trajectory_count,
                        "Number of ascent trajectories to record (needs --out)");
  add_optimizer_options(landscape, state);
  landscape->add_option("--out", state.config.out_path,
                        "Grid CSV path; trajectories go to <out>_trajectories.csv");

  CLI::App* validate = app.add_subcommand("validate", "Run the built-in sanity checks");
  validate->add_flag("--inject-h-flip", state.inject_field_sign_flip)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    finalize(state);
    if (*ergotropy) {
      qbopt::cmd_ergotropy(state.config, std::cout);
    } else if (*optimize) {
      qbopt::cmd_optimize(state.config, std::cout);
    } else if (*sweep) {
      qbopt::cmd_sweep(state.config, std::cout);
    } else if (*landscape) {
      qbopt::cmd_landscape(state.config, std::cout);
    } else if (*validate) {
      return qbopt::cmd_validate(state.config, std::cout, state.inject_field_sign_flip) ? 0 : 2;
    }
    return 0;
  } catch (const qbopt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qbopt::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
