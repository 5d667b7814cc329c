#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include <nlohmann/json.hpp>

#include "qbopt/commands.hpp"
#include "qbopt/errors.hpp"

using nlohmann::json;
using qbopt::Connectivity;
using qbopt::ModelPreset;
using qbopt::RunConfig;

namespace {

namespace fs = std::filesystem;

fs::path test_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qbopt_cmd_tests_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read_file(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(file.good());
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

struct ScopedEnv {
  std::string key;
  std::string old_value;
  bool had_old;

  ScopedEnv(const std::string& k, const std::string& v) : key(k) {
    const char* old = std::getenv(key.c_str());
    had_old = (old != nullptr);
    if (had_old) old_value = old;
    setenv(key.c_str(), v.c_str(), 1);
  }

  ~ScopedEnv() {
    if (had_old) {
      setenv(key.c_str(), old_value.c_str(), 1);
    } else {
      unsetenv(key.c_str());
    }
  }
};

RunConfig xx_config() {
  RunConfig config;
  config.preset = ModelPreset::XX;
  config.n = 2;
  return config;
}

double printed_value(const std::string& text, const std::string& label) {
  const std::size_t at = text.find(label);
  REQUIRE(at != std::string::npos);
  return std::strtod(text.c_str() + at + label.size(), nullptr);
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (const double value : {0.0, 2.25, -1.0, 0.5, 1e-6, 3.141592653589793, 0.1 + 0.2}) {
    const std::string text = qbopt::format_double(value);
    CHECK(std::strtod(text.c_str(), nullptr) == value);
  }
}

TEST_CASE("resolve_model") {
  CHECK_THROWS_AS(qbopt::resolve_model(RunConfig{}), qbopt::ConfigError);

  RunConfig bad = xx_config();
  bad.preset = ModelPreset::XXX;
  bad.gamma = 0.3;
  CHECK_THROWS_AS(qbopt::resolve_model(bad), qbopt::ValidationError);

  const qbopt::SpinModel model = qbopt::resolve_model(xx_config());
  CHECK(model.gamma == 0.0);
  CHECK(model.delta == 0.0);
  CHECK(model.coupling == -1.0);
  CHECK(model.field == 0.5);
}

TEST_CASE("cmd_ergotropy") {
  RunConfig config = xx_config();
  config.out_path = (test_dir() / "ergotropy.json").string();
  std::ostringstream out;
  qbopt::cmd_ergotropy(config, out);

  CHECK(printed_value(out.str(), "ergotropy:") == doctest::Approx(3.0).epsilon(1e-12));

  const json doc = json::parse(read_file(config.out_path));
  CHECK(doc["input_energy"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(doc["ergotropy"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(doc["spectrum"].size() == 4);
  CHECK(doc["spectrum"][0].get<double>() == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(doc["spectrum"][3].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(doc["config"]["model"] == "xx");

  SUBCASE("decoupled chain climbs the bare field ladder") {
    RunConfig free_config = xx_config();
    free_config.coupling = 0.0;
    std::ostringstream free_out;
    qbopt::cmd_ergotropy(free_config, free_out);
    CHECK(printed_value(free_out.str(), "ergotropy:") == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("cmd_optimize writes deterministic files") {
  RunConfig config = xx_config();
  config.connectivities = {Connectivity::NoConnections};
  config.trials = 8;
  config.seed = 21;

  const auto run_to = [&](const std::string& base) {
    RunConfig local = config;
    local.out_path = (test_dir() / base).string();
    std::ostringstream out;
    qbopt::cmd_optimize(local, out);
    return read_file(local.out_path + "_convergence.csv");
  };

  std::string first, second, serial, threaded;
  first = run_to("opt_a");
  second = run_to("opt_b");
  CHECK(first == second);
  {
    ScopedEnv env("QBOPT_THREADS", "1");
    serial = run_to("opt_c");
  }
  {
    ScopedEnv env("QBOPT_THREADS", "4");
    threaded = run_to("opt_d");
  }
  CHECK(serial == threaded);
  CHECK(first == serial);

  CHECK(first.find("iteration,mean_W,std_W") != std::string::npos);
  CHECK(first.find("# qbopt optimize") != std::string::npos);

  const json summary = json::parse(read_file((test_dir() / "opt_a_summary.json").string()));
  CHECK(summary["ergotropy"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(summary["final_mean"].get<double>() == doctest::Approx(2.25).epsilon(1e-3));
  CHECK(summary["efficiency"].get<double>() == doctest::Approx(0.75).epsilon(1e-3));
  CHECK(summary["config"]["seed"].get<std::uint64_t>() == 21);
}

TEST_CASE("cmd_optimize without --out prints the summary") {
  RunConfig config = xx_config();
  config.trials = 2;
  std::ostringstream out;
  qbopt::cmd_optimize(config, out);
  const json summary = json::parse(out.str());
  CHECK(summary["command"] == "optimize");
  CHECK(summary["final_mean"].is_number());
}

TEST_CASE("cmd_optimize cleans up on I/O failure") {
  RunConfig config = xx_config();
  config.trials = 1;
  config.out_path = (test_dir() / "no_such_dir" / "base").string();
  std::ostringstream out;
  CHECK_THROWS_AS(qbopt::cmd_optimize(config, out), qbopt::IoError);
  CHECK(!fs::exists(config.out_path + "_convergence.csv"));
  CHECK(!fs::exists(config.out_path + "_summary.json"));
}

TEST_CASE("cmd_sweep emits the record schema") {
  RunConfig config;
  config.preset = ModelPreset::XY;
  config.n = 2;
  config.connectivities = {Connectivity::NoConnections, Connectivity::Linear};
  config.trials = 2;
  config.axis = qbopt::SweepAxis::Gamma;
  config.sweep_from = -1.0;
  config.sweep_to = 1.0;
  config.sweep_step = 0.25;

  std::ostringstream out;
  qbopt::cmd_sweep(config, out);
  const std::string csv = out.str();
  CHECK(csv.find("preset,n,J,h,gamma,delta,connectivity,M,seed,ergotropy,mean_work,std_work,eta\n") !=
        std::string::npos);

  int data_rows = 0;
  std::istringstream lines(csv);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("preset", 0) != 0) ++data_rows;
  }
  CHECK(data_rows == 2 * 9);

  SUBCASE("json format") {
    RunConfig json_config = config;
    json_config.format = qbopt::OutputFormat::Json;
    std::ostringstream json_out;
    qbopt::cmd_sweep(json_config, json_out);
    const json doc = json::parse(json_out.str());
    CHECK(doc["records"].size() == 18);
    CHECK(doc["records"][0]["connectivity"] == "nc");
  }

  SUBCASE("bad ranges") {
    RunConfig bad = config;
    bad.sweep_step = 0.0;
    std::ostringstream sink;
    CHECK_THROWS_AS(qbopt::cmd_sweep(bad, sink), qbopt::ConfigError);
    bad = config;
    bad.sweep_step = -0.25;
    CHECK_THROWS_AS(qbopt::cmd_sweep(bad, sink), qbopt::ConfigError);
    bad = config;
    bad.axis.reset();
    CHECK_THROWS_AS(qbopt::cmd_sweep(bad, sink), qbopt::ConfigError);
  }
}

TEST_CASE("cmd_landscape") {
  RunConfig config = xx_config();
  config.grid_resolution = 11;
  config.trajectory_count = 2;
  config.out_path = (test_dir() / "landscape.csv").string();
  std::ostringstream out;
  qbopt::cmd_landscape(config, out);

  const std::string grid_csv = read_file(config.out_path);
  CHECK(grid_csv.find("theta1,theta2,W,grad1,grad2") != std::string::npos);
  CHECK(grid_csv.find("\n0,0,0,") != std::string::npos);  // W(0,0) = 0

  const std::string traj_csv = read_file((test_dir() / "landscape_trajectories.csv").string());
  CHECK(traj_csv.find("trajectory_id,step,theta1,theta2,W") != std::string::npos);

  SUBCASE("n must be 2") {
    RunConfig bad = xx_config();
    bad.n = 3;
    std::ostringstream sink;
    CHECK_THROWS_AS(qbopt::cmd_landscape(bad, sink), qbopt::ConfigError);
  }

  SUBCASE("trajectories need a file destination") {
    RunConfig bad = xx_config();
    bad.trajectory_count = 1;
    std::ostringstream sink;
    CHECK_THROWS_AS(qbopt::cmd_landscape(bad, sink), qbopt::ConfigError);
  }
}

TEST_CASE("cmd_validate") {
  std::ostringstream out;
  CHECK(qbopt::cmd_validate(RunConfig{}, out));
  CHECK(out.str().find("PASS") != std::string::npos);
  CHECK(out.str().find("FAIL") == std::string::npos);

  std::ostringstream failing;
  CHECK(!qbopt::cmd_validate(RunConfig{}, failing, /*inject_field_sign_flip=*/true));
  CHECK(failing.str().find("FAIL") != std::string::npos);
}
