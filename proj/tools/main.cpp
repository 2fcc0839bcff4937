#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <centerstone/sim.hpp>

#ifndef CENTERSTONE_BUILD_TAG
#define CENTERSTONE_BUILD_TAG "unknown"
#endif

namespace {

using namespace centerstone;

// exit codes: 0 ok, 1 runtime or check failure, 2 invalid config/log/flags

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// --seed beats the config file's seed, which beats CENTERSTONE_SEED, then 0.
uint64_t resolve_seed(bool flag_given, uint64_t flag_value, bool config_has,
                      uint64_t config_value) {
  if (flag_given) return flag_value;
  if (config_has) return config_value;
  if (const char* env = std::getenv("CENTERSTONE_SEED")) {
    try {
      size_t pos = 0;
      uint64_t v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (...) {
    }
    throw std::invalid_argument(std::string("CENTERSTONE_SEED is not an integer: '") +
                                env + "'");
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& scenario,
            const std::string& method, bool seed_given, uint64_t seed_value,
            const std::string& out_dir, bool svg) {
  if (config_path.empty() == scenario.empty()) {
    std::cerr << "run needs exactly one of --config or --scenario\n";
    return 2;
  }
  ScenarioConfig cfg;
  if (!config_path.empty()) {
    std::string text = read_file(config_path);
    cfg = config_from_json(text);
    bool has_seed = nlohmann::json::parse(text).contains("seed");
    cfg.seed = resolve_seed(seed_given, seed_value, has_seed, cfg.seed);
  } else {
    cfg = generate_scenario(scenario,
                            resolve_seed(seed_given, seed_value, false, 0));
  }
  if (!method.empty()) cfg.method = parse_method(method);
  validate(cfg);

  RunArtifacts run = run_scenario(cfg);
  Metrics m = compute_metrics(run);

  std::filesystem::create_directories(out_dir);
  auto path = [&](const char* f) { return (std::filesystem::path(out_dir) / f).string(); };
  write_file(path("trajectory.csv"), trajectory_csv(run, CENTERSTONE_BUILD_TAG));
  write_file(path("metrics.json"), metrics_json(run));
  if (svg) write_file(path("trajectory.svg"), positions_svg(run));

  std::cout << cfg.name << " method=" << method_name(cfg.method)
            << " seed=" << cfg.seed << " steps=" << m.steps_recorded - 1
            << " final_diameter=" << m.final_diameter << " steps_to_epsilon=";
  if (m.steps_to_epsilon) std::cout << *m.steps_to_epsilon;
  else std::cout << "NA";
  std::cout << " safety_violations=" << m.safety_violations
            << " final_clusters=" << m.final_clusters << "\n"
            << "wrote " << path("trajectory.csv") << ", " << path("metrics.json");
  if (svg) std::cout << ", " << path("trajectory.svg");
  std::cout << "\n";
  return 0;
}

int cmd_generate(const std::string& name, bool seed_given, uint64_t seed_value,
                 const std::string& out_path) {
  ScenarioConfig cfg =
      generate_scenario(name, resolve_seed(seed_given, seed_value, false, 0));
  std::string text = config_to_json(cfg);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& log_path, int depth_checks) {
  std::string text = read_file(log_path);
  VerifyResult vr = verify_log(text, depth_checks);
  if (vr.ok) {
    std::cout << "ok: " << vr.replayed_rows << " rows replayed, "
              << vr.safety_checks << " safety checks, " << vr.depth_checks
              << " depth checks\n";
    return 0;
  }
  for (const std::string& p : vr.problems) std::cerr << p << "\n";
  std::cerr << "verification failed: " << vr.problems.size() << " problem(s)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"safe-point consensus simulator"};
  app.require_subcommand(1);

  std::string config_path, scenario, method, out_dir = ".", name, out_path, log_path;
  uint64_t seed_value = 0;
  bool svg = false;
  int depth_checks = 5;

  CLI::App* run_cmd =
      app.add_subcommand("run", "simulate a scenario, write trajectory.csv and metrics.json");
  run_cmd->add_option("--config", config_path, "scenario config JSON file");
  run_cmd->add_option("--scenario", scenario, "built-in scenario name");
  run_cmd->add_option("--method,--safe-point-method", method,
                      "centerpoint | tverberg | iterated-radon:<r>");
  CLI::Option* run_seed = run_cmd->add_option("--seed", seed_value, "run seed");
  run_cmd->add_option("--out", out_dir, "output directory (default .)");
  run_cmd->add_flag("--svg", svg, "also write trajectory.svg");

  CLI::App* gen_cmd = app.add_subcommand("generate", "emit a built-in scenario config");
  gen_cmd->add_option("--name", name, "scenario name")->required();
  CLI::Option* gen_seed = gen_cmd->add_option("--seed", seed_value, "generator seed");
  gen_cmd->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* ver_cmd = app.add_subcommand("verify", "replay and spot-check a trajectory log");
  ver_cmd->add_option("--log", log_path, "trajectory.csv to verify")->required();
  ver_cmd->add_option("--depth-checks", depth_checks,
                      "sampled oracle re-checks per kind (0 = parse only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed())
      return cmd_run(config_path, scenario, method, run_seed->count() > 0,
                     seed_value, out_dir, svg);
    if (gen_cmd->parsed())
      return cmd_generate(name, gen_seed->count() > 0, seed_value, out_path);
    return cmd_verify(log_path, depth_checks);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
