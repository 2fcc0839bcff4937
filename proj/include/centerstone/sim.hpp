#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <centerstone/consensus.hpp>

namespace centerstone {

// ---- config serialization ----

// JSON round trip for ScenarioConfig.  Keys are emitted in sorted order, so
// the compact dump is canonical and hashable.  Parsing validates the result
// and throws std::invalid_argument naming the offending field.
std::string config_to_json(const ScenarioConfig& config, bool pretty = true);
ScenarioConfig config_from_json(const std::string& text);

// FNV-1a 64 over the compact canonical dump, formatted "fnv1a:<16 hex>".
std::string config_hash(const ScenarioConfig& config);

// ---- scenario generators ----

// Built-in scenario families, all derived deterministically from (name, seed):
//   scenario_120_stationary / _oscillating / _moveaway
//       100 normal + 20 adversarial agents on a disk graph in [-1,1]^2.
//   scenario_28_split
//       two 8-agent clusters pulled apart by 6 stationary decoys per side.
//   scenario_45_mixed
//       a 38-agent flock, two relay agents, and 5 adversaries on a fixed
//       graph; the relays only converge when the safe point can leave the
//       span of their own observations.
//   tight_triangle:<n>
//       n = 3m near-coincident copies of each triangle corner, all normal.
std::vector<std::string> scenario_names();
ScenarioConfig generate_scenario(const std::string& name, uint64_t seed);

// ---- runs and trajectory logs ----

struct RunArtifacts {
  ScenarioConfig config;
  std::vector<StepReport> reports;
};

RunArtifacts run_scenario(const ScenarioConfig& config);

// CSV log: '#' preamble (run metadata plus the compact config JSON), then one
// header row and one data row per (step, agent).  Numbers use %.17g so a
// reload reproduces the doubles bit for bit.  build_tag lands in the preamble
// only; body bytes depend on nothing but the run.
std::string trajectory_csv(const RunArtifacts& run,
                           const std::string& build_tag = "unknown");

struct LogRow {
  int t = 0;
  int agent = 0;
  bool adversarial = false;
  Point x;
  std::optional<Point> safe_point;  // normal agents that computed one
  bool held = false;
  std::optional<int> n_f_assumed;       // normal agents only
  std::optional<int> resilience_margin; // normal agents only
  bool safety_ok = true;
  double normal_diameter = 0.0;
};

struct ParsedLog {
  ScenarioConfig config;
  std::map<std::string, std::string> preamble;  // key -> value
  std::vector<LogRow> rows;                     // writer order: t asc, id asc
  std::vector<std::string> body_lines;          // header row + data rows, raw
};

// Strict parser; throws std::invalid_argument with a line number on any
// malformed preamble entry, header, or row.
ParsedLog parse_trajectory_csv(const std::string& text);

// ---- metrics ----

struct Metrics {
  double final_diameter = 0.0;
  std::optional<int> steps_to_epsilon;  // first t with diameter < epsilon
  int safety_violations = 0;            // steps with safety_ok false
  int worst_resilience_margin = 0;      // min over all normal agent reports
  std::vector<int> per_step_worst_resilience_margin;
  int final_clusters = 0;               // single-linkage at 1e-2 on final normals
  int steps_recorded = 0;
};

Metrics compute_metrics(const RunArtifacts& run);

// Connected components of the graph linking points closer than `linkage`.
int cluster_count(const std::vector<Point>& points, double linkage);

// Metrics plus identifying config fields as a pretty JSON object.
std::string metrics_json(const RunArtifacts& run);

// ---- rendering ----

// 2-d trajectory plot: one polyline per agent (normal blue, adversarial red),
// a dot at the final position, workspace outline.  Throws for d != 2.
std::string positions_svg(const RunArtifacts& run);

// ---- verification ----

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> problems;  // empty iff ok
  int replayed_rows = 0;
  int safety_checks = 0;
  int depth_checks = 0;
};

// Replays the logged config and compares the regenerated body byte for byte,
// then re-checks `depth_checks` sampled safety flags and safe-point depth
// claims against the exhaustive reference implementations (samples the
// reference refuses, e.g. oversized views, are skipped, not failed).
// depth_checks <= 0 means parse-only.  Malformed input throws (exit code 2
// territory); a clean parse with bad content returns ok = false.
VerifyResult verify_log(const std::string& csv_text, int depth_checks);

}  // namespace centerstone
