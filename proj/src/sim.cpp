#include <centerstone/sim.hpp>

#include <algorithm>
#include <cinttypes>
#include <climits>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include <centerstone/oracle.hpp>

namespace centerstone {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Point p2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

// ---- config <-> json ----

const json& need(const json& j, const char* key) {
  if (!j.contains(key))
    throw std::invalid_argument(std::string("config: missing field '") + key + "'");
  return j.at(key);
}

json vec_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from_json(const json& a, const char* what) {
  if (!a.is_array() || a.empty())
    throw std::invalid_argument(std::string("config: ") + what +
                                " must be a nonempty array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number())
      throw std::invalid_argument(std::string("config: ") + what +
                                  " must contain only numbers");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

const char* kind_str(AdversaryBehavior::Kind k) {
  switch (k) {
    case AdversaryBehavior::Kind::Stationary: return "stationary";
    case AdversaryBehavior::Kind::Oscillating: return "oscillating";
    case AdversaryBehavior::Kind::MoveAway: return "moveaway";
    case AdversaryBehavior::Kind::Equivocate: return "equivocate";
  }
  return "stationary";
}

AdversaryBehavior::Kind kind_from(const std::string& s) {
  if (s == "stationary") return AdversaryBehavior::Kind::Stationary;
  if (s == "oscillating") return AdversaryBehavior::Kind::Oscillating;
  if (s == "moveaway") return AdversaryBehavior::Kind::MoveAway;
  if (s == "equivocate") return AdversaryBehavior::Kind::Equivocate;
  throw std::invalid_argument("config: unknown behavior kind '" + s + "'");
}

json config_to_json_obj(const ScenarioConfig& c) {
  json j;
  j["schema_version"] = 1;
  j["name"] = c.name;
  j["dimension"] = c.dimension;
  j["workspace"] = {{"lo", vec_to_json(c.workspace.lo)},
                    {"hi", vec_to_json(c.workspace.hi)}};
  json agents = json::array();
  for (const AgentSpec& a : c.agents) {
    json ja;
    ja["id"] = a.id;
    ja["role"] = a.adversarial ? "adversarial" : "normal";
    ja["x0"] = vec_to_json(a.x0);
    if (a.adversarial) {
      json jb;
      jb["kind"] = kind_str(a.behavior.kind);
      jb["inner"] = kind_str(a.behavior.inner);
      jb["square_side"] = a.behavior.square_side;
      jb["spread"] = a.behavior.spread;
      ja["behavior"] = jb;
    }
    agents.push_back(ja);
  }
  j["agents"] = agents;
  json jn;
  if (c.network.mode == Network::Mode::Disk) {
    jn["mode"] = "disk";
    jn["radius"] = c.network.radius;
  } else {
    jn["mode"] = "fixed";
    json edges = json::array();
    for (const auto& [s, r] : c.network.edges)
      edges.push_back(json::array({s, r}));
    jn["edges"] = edges;
  }
  j["network"] = jn;
  j["method"] = method_name(c.method);
  j["alpha"] = c.alpha;
  if (!c.alpha_schedule.empty()) j["alpha_schedule"] = c.alpha_schedule;
  j["epsilon"] = c.epsilon;
  j["max_steps"] = c.max_steps;
  j["seed"] = c.seed;
  return j;
}

}  // namespace

std::string config_to_json(const ScenarioConfig& config, bool pretty) {
  json j = config_to_json_obj(config);
  return pretty ? j.dump(2) + "\n" : j.dump();
}

ScenarioConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  try {
    if (j.contains("schema_version") && j["schema_version"] != 1)
      throw std::invalid_argument("config: unsupported schema_version");
    ScenarioConfig c;
    c.name = j.value("name", std::string("custom"));
    c.dimension = need(j, "dimension").get<int>();
    const json& jw = need(j, "workspace");
    c.workspace.lo = vec_from_json(need(jw, "lo"), "workspace.lo");
    c.workspace.hi = vec_from_json(need(jw, "hi"), "workspace.hi");
    c.agents.clear();
    for (const json& ja : need(j, "agents")) {
      AgentSpec a;
      a.id = need(ja, "id").get<int>();
      std::string role = need(ja, "role").get<std::string>();
      if (role == "adversarial") a.adversarial = true;
      else if (role != "normal")
        throw std::invalid_argument("config: agent role must be 'normal' or 'adversarial'");
      a.x0 = vec_from_json(need(ja, "x0"), "agent x0");
      if (ja.contains("behavior")) {
        const json& jb = ja["behavior"];
        a.behavior.kind = kind_from(need(jb, "kind").get<std::string>());
        if (jb.contains("inner"))
          a.behavior.inner = kind_from(jb["inner"].get<std::string>());
        a.behavior.square_side = jb.value("square_side", 0.1);
        a.behavior.spread = jb.value("spread", 0.05);
      }
      c.agents.push_back(std::move(a));
    }
    const json& jn = need(j, "network");
    std::string mode = need(jn, "mode").get<std::string>();
    if (mode == "disk") {
      c.network.mode = Network::Mode::Disk;
      c.network.radius = jn.value("radius", 0.45);
    } else if (mode == "fixed") {
      c.network.mode = Network::Mode::Fixed;
      c.network.edges.clear();
      for (const json& je : need(jn, "edges")) {
        if (!je.is_array() || je.size() != 2)
          throw std::invalid_argument("config: network edge must be [sender, receiver]");
        c.network.edges.emplace_back(je[0].get<int>(), je[1].get<int>());
      }
    } else {
      throw std::invalid_argument("config: network mode must be 'disk' or 'fixed'");
    }
    c.method = parse_method(j.value("method", std::string("centerpoint")));
    c.alpha = j.value("alpha", 0.8);
    if (j.contains("alpha_schedule"))
      c.alpha_schedule = j["alpha_schedule"].get<std::vector<double>>();
    c.epsilon = j.value("epsilon", 1e-3);
    c.max_steps = j.value("max_steps", 500);
    c.seed = j.value("seed", static_cast<uint64_t>(0));
    validate(c);
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

std::string config_hash(const ScenarioConfig& config) {
  std::string dump = config_to_json(config, false);
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016" PRIx64, h);
  return buf;
}

// ---- generators ----

namespace {

AgentSpec make_normal(int id, Point x0) {
  AgentSpec a;
  a.id = id;
  a.x0 = std::move(x0);
  return a;
}

AgentSpec make_adv(int id, Point x0, AdversaryBehavior::Kind kind) {
  AgentSpec a;
  a.id = id;
  a.adversarial = true;
  a.behavior.kind = kind;
  a.x0 = std::move(x0);
  return a;
}

Box box2(double x0, double y0, double x1, double y1) {
  Box b;
  b.lo = p2(x0, y0);
  b.hi = p2(x1, y1);
  return b;
}

// 100 normal + 20 adversarial agents on a disk graph of radius 0.45 in
// W = [-1,1]^2.  Agents deploy over the central [-0.35,0.35]^2: views must
// overlap heavily relative to the disk radius or local contraction tears the
// graph apart (a sparse full-workspace scatter disconnects within a few
// steps and the pieces then converge separately).
ScenarioConfig gen_120(const std::string& name, AdversaryBehavior::Kind kind,
                       uint64_t seed) {
  ScenarioConfig c;
  c.name = name;
  c.dimension = 2;
  c.workspace = box2(-1, -1, 1, 1);
  c.network.mode = Network::Mode::Disk;
  c.network.radius = 0.45;
  SplitMix64 rng(derive_seed(seed, 0x120));
  for (int i = 0; i < 120; ++i) {
    Point p = p2(rng.uniform(-0.35, 0.35), rng.uniform(-0.35, 0.35));
    if (i < 100) c.agents.push_back(make_normal(i, std::move(p)));
    else c.agents.push_back(make_adv(i, std::move(p), kind));
  }
  c.seed = seed;
  return c;
}

// Two 8-agent clusters of normal agents (all 16 mutually connected) plus 6
// stationary decoys per side, observed only by that side's cluster.  Every
// normal view holds 22 agents: 6 decoys exceed the 5 adversaries a
// 22-point partition-based safe point tolerates, but stay within the 7 the
// depth-based one does.
ScenarioConfig gen_28(uint64_t seed) {
  ScenarioConfig c;
  c.name = "scenario_28_split";
  c.dimension = 2;
  c.workspace = box2(-1.5, -0.375, 1.5, 0.375);
  c.network.mode = Network::Mode::Fixed;
  SplitMix64 rng(derive_seed(seed, 0x28));
  for (int i = 0; i < 16; ++i) {
    double side = i < 8 ? -1.0 : 1.0;
    c.agents.push_back(make_normal(
        i, p2(side * 0.35 + rng.uniform(-0.05, 0.05), rng.uniform(-0.2, 0.2))));
  }
  for (int k = 0; k < 12; ++k) {
    double side = k < 6 ? -1.0 : 1.0;
    c.agents.push_back(
        make_adv(16 + k, p2(side * 1.1 + rng.uniform(-0.1, 0.1), rng.uniform(-0.3, 0.3)),
                 AdversaryBehavior::Kind::Stationary));
  }
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (i != j) c.network.edges.emplace_back(i, j);
  for (int k = 0; k < 6; ++k) {
    for (int i = 0; i < 8; ++i) c.network.edges.emplace_back(16 + k, i);
    for (int i = 8; i < 16; ++i) c.network.edges.emplace_back(22 + k, i);
  }
  c.seed = seed;
  return c;
}

// A 38-agent flock (complete among itself, plus 3 in-view decoys), and two
// relay agents that each see the two far-off adversaries, each other, and a
// few flock members: views of 7 and 8 agents with 2 adversaries each, which
// is inside the depth bound (tolerates 2) but outside the partition bound
// (tolerates 1).
ScenarioConfig gen_45(uint64_t seed) {
  ScenarioConfig c;
  c.name = "scenario_45_mixed";
  c.dimension = 2;
  c.workspace = box2(-2, -0.5, 2, 0.5);
  c.network.mode = Network::Mode::Fixed;
  SplitMix64 rng(derive_seed(seed, 0x45));
  for (int i = 0; i < 38; ++i)
    c.agents.push_back(
        make_normal(i, p2(rng.uniform(0.8, 1.4), rng.uniform(-0.3, 0.3))));
  c.agents.push_back(make_normal(
      38, p2(-0.2 + rng.uniform(-0.02, 0.02), rng.uniform(-0.1, 0.1))));
  c.agents.push_back(make_normal(
      39, p2(0.2 + rng.uniform(-0.02, 0.02), rng.uniform(-0.1, 0.1))));
  for (int k = 0; k < 2; ++k)
    c.agents.push_back(
        make_adv(40 + k, p2(-1.8 + rng.uniform(-0.02, 0.02), rng.uniform(-0.1, 0.1)),
                 AdversaryBehavior::Kind::Stationary));
  for (int k = 0; k < 3; ++k)
    c.agents.push_back(
        make_adv(42 + k, p2(rng.uniform(-1.6, -1.3), rng.uniform(-0.3, 0.3)),
                 AdversaryBehavior::Kind::Stationary));
  for (int i = 0; i < 38; ++i)
    for (int j = 0; j < 38; ++j)
      if (i != j) c.network.edges.emplace_back(i, j);
  for (int k = 42; k < 45; ++k)
    for (int i = 0; i < 38; ++i) c.network.edges.emplace_back(k, i);
  for (int s : {40, 41, 39, 0, 1, 2}) c.network.edges.emplace_back(s, 38);
  for (int s : {40, 41, 38, 0, 1, 2, 3}) c.network.edges.emplace_back(s, 39);
  c.seed = seed;
  return c;
}

// n/3 near-coincident agents at each corner of a triangle; the family where
// the depth guarantee ceil(n/3) is exactly tight.
ScenarioConfig gen_triangle(int n, uint64_t seed) {
  if (n < 3 || n % 3 != 0)
    throw std::invalid_argument("tight_triangle needs n divisible by 3, got " +
                                std::to_string(n));
  ScenarioConfig c;
  c.name = "tight_triangle:" + std::to_string(n);
  c.dimension = 2;
  c.workspace = box2(-0.5, -0.5, 1.5, 1.5);
  c.network.mode = Network::Mode::Disk;
  c.network.radius = 3.0;
  const double cx[3] = {0, 1, 0};
  const double cy[3] = {0, 0, 1};
  SplitMix64 rng(derive_seed(seed, 0x731));
  int m = n / 3;
  for (int i = 0; i < n; ++i) {
    int corner = i / m;
    c.agents.push_back(make_normal(
        i, p2(cx[corner] + rng.uniform(-1e-4, 1e-4),
              cy[corner] + rng.uniform(-1e-4, 1e-4))));
  }
  c.seed = seed;
  return c;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"scenario_120_stationary", "scenario_120_oscillating",
          "scenario_120_moveaway",   "scenario_28_split",
          "scenario_45_mixed",       "tight_triangle:<n>"};
}

ScenarioConfig generate_scenario(const std::string& name, uint64_t seed) {
  ScenarioConfig c;
  if (name == "scenario_120_stationary")
    c = gen_120(name, AdversaryBehavior::Kind::Stationary, seed);
  else if (name == "scenario_120_oscillating")
    c = gen_120(name, AdversaryBehavior::Kind::Oscillating, seed);
  else if (name == "scenario_120_moveaway")
    c = gen_120(name, AdversaryBehavior::Kind::MoveAway, seed);
  else if (name == "scenario_28_split")
    c = gen_28(seed);
  else if (name == "scenario_45_mixed")
    c = gen_45(seed);
  else if (name.rfind("tight_triangle", 0) == 0) {
    // accept tight_triangle:<n> and tight_triangle(<n>)
    std::string rest = name.substr(14);
    if (!rest.empty() && rest.front() == ':') rest = rest.substr(1);
    else if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')')
      rest = rest.substr(1, rest.size() - 2);
    else
      rest.clear();
    size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(rest, &pos);
    } catch (...) {
      pos = 0;
    }
    if (rest.empty() || pos != rest.size())
      throw std::invalid_argument("unknown scenario '" + name +
                                  "'; tight_triangle takes tight_triangle:<n>");
    c = gen_triangle(n, seed);
  } else {
    std::string all;
    for (const std::string& s : scenario_names()) all += " " + s;
    throw std::invalid_argument("unknown scenario '" + name + "'; available:" + all);
  }
  validate(c);
  return c;
}

// ---- runs and logs ----

RunArtifacts run_scenario(const ScenarioConfig& config) {
  RunArtifacts out;
  out.config = config;
  out.reports = run(config);
  return out;
}

namespace {

// Header row plus one data row per (step, agent); shared by the writer and
// the replay comparison in verify_log.
std::vector<std::string> body_rows(const RunArtifacts& run) {
  const ScenarioConfig& cfg = run.config;
  const int d = cfg.dimension;
  const int n = static_cast<int>(cfg.agents.size());
  std::vector<std::string> lines;
  std::string head = "t,agent,role";
  for (int j = 0; j < d; ++j) head += ",x" + std::to_string(j);
  for (int j = 0; j < d; ++j) head += ",sp" + std::to_string(j);
  head += ",held,n_f_assumed,resilience_margin,safety_ok,normal_diameter";
  lines.push_back(head);
  for (const StepReport& rep : run.reports) {
    for (int i = 0; i < n; ++i) {
      const AgentReport& ar = rep.agents[i];
      const bool adv = cfg.agents[i].adversarial;
      std::string s = std::to_string(rep.t) + "," + std::to_string(i) + "," +
                      (adv ? "adversarial" : "normal");
      for (int j = 0; j < d; ++j) s += "," + fmt(ar.x[j]);
      if (ar.safe_point)
        for (int j = 0; j < d; ++j) s += "," + fmt((*ar.safe_point)[j]);
      else
        for (int j = 0; j < d; ++j) s += ",NA";
      if (adv) {
        s += ",NA,NA,NA";
      } else {
        s += ar.held ? ",1" : ",0";
        s += "," + std::to_string(ar.n_f_assumed);
        s += "," + std::to_string(ar.resilience_margin);
      }
      s += rep.safety_ok ? ",1" : ",0";
      s += "," + fmt(rep.normal_diameter);
      lines.push_back(std::move(s));
    }
  }
  return lines;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

[[noreturn]] void bad_line(size_t line_no, const std::string& what) {
  throw std::invalid_argument("trajectory line " + std::to_string(line_no) +
                              ": " + what);
}

int parse_int(const std::string& s, size_t line_no, const char* what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos == s.size()) return v;
  } catch (...) {
  }
  bad_line(line_no, std::string("bad ") + what + " '" + s + "'");
}

double parse_double(const std::string& s, size_t line_no, const char* what) {
  if (!s.empty()) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin + s.size()) return v;
  }
  bad_line(line_no, std::string("bad ") + what + " '" + s + "'");
}

bool parse_flag(const std::string& s, size_t line_no, const char* what) {
  if (s == "0") return false;
  if (s == "1") return true;
  bad_line(line_no, std::string("bad ") + what + " '" + s + "' (want 0 or 1)");
}

}  // namespace

std::string trajectory_csv(const RunArtifacts& run, const std::string& build_tag) {
  const ScenarioConfig& cfg = run.config;
  std::string out;
  out += "# centerstone trajectory v1\n";
  out += "# name=" + cfg.name + "\n";
  out += "# method=" + method_name(cfg.method) + "\n";
  out += "# seed=" + std::to_string(cfg.seed) + "\n";
  out += "# dimension=" + std::to_string(cfg.dimension) + "\n";
  out += "# agents=" + std::to_string(cfg.agents.size()) + "\n";
  out += "# alpha=" + fmt(cfg.alpha) + "\n";
  out += "# epsilon=" + fmt(cfg.epsilon) + "\n";
  out += "# max_steps=" + std::to_string(cfg.max_steps) + "\n";
  out += "# config_hash=" + config_hash(cfg) + "\n";
  out += "# build=" + build_tag + "\n";
  out += "# config=" + config_to_json(cfg, false) + "\n";
  for (const std::string& l : body_rows(run)) {
    out += l;
    out += '\n';
  }
  return out;
}

ParsedLog parse_trajectory_csv(const std::string& text) {
  ParsedLog log;
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("trajectory: empty input");
  if (lines[0] != "# centerstone trajectory v1")
    bad_line(1, "unrecognized log format (want '# centerstone trajectory v1')");
  size_t ln = 1;
  while (ln < lines.size() && !lines[ln].empty() && lines[ln][0] == '#') {
    const std::string& line = lines[ln];
    size_t eq = line.find('=');
    if (line.size() < 3 || line[1] != ' ' || eq == std::string::npos || eq < 3)
      bad_line(ln + 1, "malformed preamble entry (want '# key=value')");
    log.preamble[line.substr(2, eq - 2)] = line.substr(eq + 1);
    ++ln;
  }
  auto it = log.preamble.find("config");
  if (it == log.preamble.end())
    throw std::invalid_argument("trajectory: missing '# config=' line");
  log.config = config_from_json(it->second);
  const int d = log.config.dimension;
  const int n = static_cast<int>(log.config.agents.size());

  std::string head = "t,agent,role";
  for (int j = 0; j < d; ++j) head += ",x" + std::to_string(j);
  for (int j = 0; j < d; ++j) head += ",sp" + std::to_string(j);
  head += ",held,n_f_assumed,resilience_margin,safety_ok,normal_diameter";
  if (ln >= lines.size()) throw std::invalid_argument("trajectory: missing header row");
  if (lines[ln] != head) bad_line(ln + 1, "header row does not match the config");
  log.body_lines.push_back(lines[ln]);
  ++ln;

  const size_t ncols = static_cast<size_t>(3 + 2 * d + 5);
  size_t row_idx = 0;
  for (; ln < lines.size(); ++ln, ++row_idx) {
    const std::string& line = lines[ln];
    std::vector<std::string> f = split_csv(line);
    if (f.size() != ncols)
      bad_line(ln + 1, "expected " + std::to_string(ncols) + " fields, got " +
                           std::to_string(f.size()));
    LogRow r;
    r.t = parse_int(f[0], ln + 1, "step");
    r.agent = parse_int(f[1], ln + 1, "agent id");
    if (r.t != static_cast<int>(row_idx) / n || r.agent != static_cast<int>(row_idx) % n)
      bad_line(ln + 1, "rows must cover every agent of every step in order");
    if (f[2] == "adversarial") r.adversarial = true;
    else if (f[2] != "normal") bad_line(ln + 1, "bad role '" + f[2] + "'");
    if (r.adversarial != log.config.agents[r.agent].adversarial)
      bad_line(ln + 1, "role does not match the config");
    r.x = Point(d);
    for (int j = 0; j < d; ++j) r.x[j] = parse_double(f[3 + j], ln + 1, "coordinate");
    if (f[3 + d] == "NA") {
      for (int j = 1; j < d; ++j)
        if (f[3 + d + j] != "NA") bad_line(ln + 1, "safe point must be NA or all numbers");
    } else {
      Point sp(d);
      for (int j = 0; j < d; ++j)
        sp[j] = parse_double(f[3 + d + j], ln + 1, "safe point coordinate");
      r.safe_point = std::move(sp);
    }
    const size_t held_col = static_cast<size_t>(3 + 2 * d);
    if (r.adversarial) {
      for (size_t j = held_col; j < held_col + 3; ++j)
        if (f[j] != "NA") bad_line(ln + 1, "adversarial rows take NA flags");
    } else {
      r.held = parse_flag(f[held_col], ln + 1, "held flag");
      r.n_f_assumed = parse_int(f[held_col + 1], ln + 1, "n_f_assumed");
      r.resilience_margin = parse_int(f[held_col + 2], ln + 1, "resilience_margin");
    }
    r.safety_ok = parse_flag(f[held_col + 3], ln + 1, "safety flag");
    r.normal_diameter = parse_double(f[held_col + 4], ln + 1, "diameter");
    log.rows.push_back(std::move(r));
    log.body_lines.push_back(line);
  }
  if (log.rows.empty()) throw std::invalid_argument("trajectory: no data rows");
  if (log.rows.size() % static_cast<size_t>(n) != 0)
    throw std::invalid_argument("trajectory: truncated final step");
  return log;
}

// ---- metrics ----

int cluster_count(const std::vector<Point>& points, double linkage) {
  const int n = static_cast<int>(points.size());
  if (n == 0) return 0;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((points[i] - points[j]).norm() <= linkage) parent[find(i)] = find(j);
  int count = 0;
  for (int i = 0; i < n; ++i)
    if (find(i) == i) ++count;
  return count;
}

Metrics compute_metrics(const RunArtifacts& run) {
  const ScenarioConfig& cfg = run.config;
  Metrics m;
  m.steps_recorded = static_cast<int>(run.reports.size());
  m.final_diameter = run.reports.back().normal_diameter;
  m.worst_resilience_margin = INT_MAX;
  for (const StepReport& rep : run.reports) {
    if (!m.steps_to_epsilon && rep.normal_diameter < cfg.epsilon)
      m.steps_to_epsilon = rep.t;
    if (!rep.safety_ok) ++m.safety_violations;
    int step_worst = INT_MAX;
    for (size_t i = 0; i < cfg.agents.size(); ++i)
      if (!cfg.agents[i].adversarial)
        step_worst = std::min(step_worst, rep.agents[i].resilience_margin);
    m.per_step_worst_resilience_margin.push_back(step_worst);
    m.worst_resilience_margin = std::min(m.worst_resilience_margin, step_worst);
  }
  std::vector<Point> last;
  for (size_t i = 0; i < cfg.agents.size(); ++i)
    if (!cfg.agents[i].adversarial) last.push_back(run.reports.back().agents[i].x);
  m.final_clusters = cluster_count(last, 1e-2);
  return m;
}

std::string metrics_json(const RunArtifacts& run) {
  const ScenarioConfig& cfg = run.config;
  Metrics m = compute_metrics(run);
  json j;
  j["schema_version"] = 1;
  j["name"] = cfg.name;
  j["method"] = method_name(cfg.method);
  j["seed"] = cfg.seed;
  j["dimension"] = cfg.dimension;
  j["alpha"] = cfg.alpha;
  j["epsilon"] = cfg.epsilon;
  j["max_steps"] = cfg.max_steps;
  j["config_hash"] = config_hash(cfg);
  j["final_diameter"] = m.final_diameter;
  j["steps_to_epsilon"] = m.steps_to_epsilon ? json(*m.steps_to_epsilon) : json(nullptr);
  j["safety_violations"] = m.safety_violations;
  j["worst_resilience_margin"] = m.worst_resilience_margin;
  j["per_step_worst_resilience_margin"] = m.per_step_worst_resilience_margin;
  j["cluster_linkage"] = 1e-2;
  j["final_clusters"] = m.final_clusters;
  j["steps_recorded"] = m.steps_recorded;
  return j.dump(2) + "\n";
}

// ---- svg ----

std::string positions_svg(const RunArtifacts& run) {
  const ScenarioConfig& cfg = run.config;
  if (cfg.dimension != 2)
    throw std::invalid_argument("positions_svg renders 2-d runs only");
  const Box& ws = cfg.workspace;
  const double wx = ws.hi[0] - ws.lo[0];
  const double wy = ws.hi[1] - ws.lo[1];
  const double s = 760.0 / std::max(wx, wy);
  const double width = wx * s + 40.0;
  const double height = wy * s + 40.0;
  auto sx = [&](double x) { return 20.0 + (x - ws.lo[0]) * s; };
  auto sy = [&](double y) { return 20.0 + (ws.hi[1] - y) * s; };
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"20\" y=\"20\" width=\"%.2f\" height=\"%.2f\" "
                "fill=\"none\" stroke=\"#999\"/>\n",
                wx * s, wy * s);
  out += buf;
  for (size_t i = 0; i < cfg.agents.size(); ++i) {
    const char* color = cfg.agents[i].adversarial ? "#d62728" : "#1f77b4";
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1\" opacity=\"0.6\" points=\"";
    for (const StepReport& rep : run.reports) {
      const Point& p = rep.agents[i].x;
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(p[0]), sy(p[1]));
      out += buf;
    }
    out += "\"/>\n";
    const Point& last = run.reports.back().agents[i].x;
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n",
                  sx(last[0]), sy(last[1]), color);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

// ---- verify ----

VerifyResult verify_log(const std::string& csv_text, int depth_checks) {
  ParsedLog log = parse_trajectory_csv(csv_text);
  VerifyResult vr;
  if (depth_checks <= 0) return vr;

  const ScenarioConfig& cfg = log.config;
  const int n = static_cast<int>(cfg.agents.size());
  const int T = log.rows.back().t;

  RunArtifacts replay = run_scenario(cfg);
  std::vector<std::string> regen = body_rows(replay);
  vr.replayed_rows = static_cast<int>(log.body_lines.size());
  if (regen.size() != log.body_lines.size()) {
    vr.ok = false;
    vr.problems.push_back("replay produced " + std::to_string(regen.size()) +
                          " body lines, log has " +
                          std::to_string(log.body_lines.size()));
  } else {
    for (size_t i = 0; i < regen.size(); ++i) {
      if (regen[i] == log.body_lines[i]) continue;
      vr.ok = false;
      vr.problems.push_back("body line " + std::to_string(i + 1) +
                            " differs from replay: log '" + log.body_lines[i] +
                            "' vs '" + regen[i] + "'");
      if (vr.problems.size() >= 8) {
        vr.problems.push_back("(further differences suppressed)");
        break;
      }
    }
  }

  auto row = [&](int t, int i) -> const LogRow& {
    return log.rows[static_cast<size_t>(t) * n + i];
  };
  std::vector<Eigen::VectorXd> normal0_rows;
  for (int i = 0; i < n; ++i)
    if (!cfg.agents[i].adversarial) normal0_rows.push_back(row(0, i).x);
  PointSet normal0 = PointSet::from_rows(normal0_rows);

  SplitMix64 rng(derive_seed(cfg.seed, 0x7e51));
  for (int k = 0; k < depth_checks; ++k) {
    const int t = static_cast<int>(rng.below(static_cast<uint64_t>(T) + 1));
    bool all_in = true;
    bool refused = false;
    for (int i = 0; i < n && !refused; ++i) {
      if (cfg.agents[i].adversarial) continue;
      try {
        if (!oracle::oracle_in_hull(row(t, i).x, normal0)) all_in = false;
      } catch (const RefusedInputError&) {
        refused = true;
      }
    }
    if (refused) continue;
    ++vr.safety_checks;
    if (all_in != row(t, 0).safety_ok) {
      vr.ok = false;
      vr.problems.push_back("step " + std::to_string(t) + ": logged safety_ok=" +
                            (row(t, 0).safety_ok ? std::string("1") : std::string("0")) +
                            " but the hull re-check disagrees");
    }
  }

  for (int k = 0; k < depth_checks; ++k) {
    const int t = static_cast<int>(rng.below(static_cast<uint64_t>(T) + 1));
    std::vector<int> candidates;
    for (int i = 0; i < n; ++i)
      if (!cfg.agents[i].adversarial && row(t, i).safe_point) candidates.push_back(i);
    if (candidates.empty()) continue;
    const int i = candidates[rng.below(candidates.size())];
    std::vector<Point> x(n);
    for (int a = 0; a < n; ++a) x[a] = row(t, a).x;
    auto views = gather_views(cfg.network, cfg.agents, x, cfg.workspace, t, cfg.seed);
    const PointSet& view = views.at(i);
    int dep = 0;
    try {
      dep = oracle::oracle_depth(*row(t, i).safe_point, view);
    } catch (const RefusedInputError&) {
      continue;
    }
    ++vr.depth_checks;
    const int need = *row(t, i).n_f_assumed + 1;
    if (dep < need) {
      vr.ok = false;
      vr.problems.push_back("step " + std::to_string(t) + " agent " +
                            std::to_string(i) + ": safe point depth " +
                            std::to_string(dep) + " is below the claimed " +
                            std::to_string(need));
    }
  }
  return vr;
}

}  // namespace centerstone
