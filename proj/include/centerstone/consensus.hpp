#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <centerstone/types.hpp>

namespace centerstone {

// Axis-aligned workspace box.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Point& p, double tol = 0.0) const;
  Point clamp(const Point& p) const;
  // Corner of the box nearest to p; per-coordinate ties pick the low side.
  Point nearest_corner(const Point& p) const;
  double diameter() const { return (hi - lo).norm(); }
};

enum class SafePointMethod { Centerpoint, IteratedRadon, Tverberg };

struct MethodSpec {
  SafePointMethod kind = SafePointMethod::Centerpoint;
  int radon_r = 2;  // IteratedRadon only

  bool operator==(const MethodSpec&) const = default;
};

std::string method_name(const MethodSpec& m);
MethodSpec parse_method(const std::string& name);  // throws invalid_argument

// What an adversarial agent does with its position and its messages.
// Oscillating walks the 4 corners of a square of the given side centered on
// the agent's start position, one corner per step.  MoveAway heads to the
// nearest workspace corner at a fixed speed and parks there.  Equivocate
// moves per `inner` but sends every receiver an individually perturbed
// position (offset magnitude <= spread, seeded per step/sender/receiver).
struct AdversaryBehavior {
  enum class Kind { Stationary, Oscillating, MoveAway, Equivocate };
  Kind kind = Kind::Stationary;
  Kind inner = Kind::Stationary;  // Equivocate only; must not be Equivocate
  double square_side = 0.1;       // Oscillating
  double spread = 0.05;           // Equivocate

  bool operator==(const AdversaryBehavior&) const = default;
};

struct AgentSpec {
  int id = 0;
  bool adversarial = false;
  AdversaryBehavior behavior;  // ignored for normal agents
  Point x0;
};

// Directed observation graph.  An edge (sender, receiver) means the receiver
// observes the sender's value.  Every node observes itself; self-loops are
// implicit and need not be listed.  Disk mode derives the edges each step
// from true positions: j is observed by i iff |x_j - x_i| <= radius.
struct Network {
  enum class Mode { Fixed, Disk };
  Mode mode = Mode::Disk;
  double radius = 0.45;                    // Disk only
  std::vector<std::pair<int, int>> edges;  // Fixed only, (sender, receiver)
};

struct ScenarioConfig {
  std::string name = "custom";
  int dimension = 2;
  Box workspace;
  std::vector<AgentSpec> agents;  // ids must be 0..n-1 in order
  Network network;
  MethodSpec method;
  double alpha = 0.8;
  std::vector<double> alpha_schedule;  // optional per-step alpha overrides
  double epsilon = 1e-3;
  int max_steps = 500;
  uint64_t seed = 0;
};

// Throws std::invalid_argument naming the offending field.
void validate(const ScenarioConfig& config);

struct AgentReport {
  Point x;                         // state at t
  std::optional<Point> safe_point; // computed this step (normal agents)
  bool held = false;               // fell back to holding position
  bool resilience_ok = true;       // true adversary count within method bound
  int resilience_margin = 0;       // method bound minus true adversaries in view
  int view_size = 0;
  int n_f_assumed = 0;
};

struct StepReport {
  int t = 0;
  std::vector<AgentReport> agents;
  double normal_diameter = 0.0;
  bool safety_ok = true;  // all normal states inside conv of initial normal states
};

// True position of an adversarial agent at step t; its x0 is the anchor, so
// every behavior starts exactly at x0.
Point behavior_position(const AgentSpec& agent, const Box& workspace, int t);

// Value `sender` transmits to `receiver` at step t given its true position.
// Equals the true position except for equivocators, which add a seeded
// per-(step, sender, receiver) offset of magnitude <= spread.
Point sent_value(const AgentSpec& sender, const Point& true_position, int t,
                 int receiver, uint64_t seed);

// Observed sender ids per receiver (sorted, self included) at positions x.
std::vector<std::vector<int>> neighborhoods(const Network& net,
                                            const std::vector<Point>& x);

// Received multiset per normal agent: true positions from normal senders,
// behavior/equivocation values from adversarial ones.  Entry order follows
// ascending sender id.
std::map<int, PointSet> gather_views(const Network& net,
                                     const std::vector<AgentSpec>& agents,
                                     const std::vector<Point>& x,
                                     const Box& workspace, int t,
                                     uint64_t seed);

// Largest n_f the method bound tolerates for a view of n points (self
// included) in dimension d: centerpoint ceil(n/(d+1))-1, tverberg
// ceil(n/2^d)-1, iterated-radon(r) ceil(n/d^(r/(r-1)))-1.
int resilience_bound(int n, int d, const MethodSpec& method);
bool resilience_condition(int n, int n_f, int d, const MethodSpec& method);

struct AdrcOutcome {
  Point next;
  std::optional<Point> safe_point;
  bool held = false;
};

// One update: s = safe point of the view per method, next = alpha*s +
// (1-alpha)*x.  When the method offers no guarantee (too few points,
// n_f_assumed beyond its bound) the agent holds position and the outcome is
// marked held.
AdrcOutcome adrc_step(const PointSet& view, const Point& x_i, double alpha,
                      const MethodSpec& method, int n_f_assumed,
                      uint64_t seed);

// Full deterministic rollout.  Report[t] records the state at t; the run
// stops after recording a step with normal diameter < epsilon or after
// max_steps updates.
std::vector<StepReport> run(const ScenarioConfig& config);

}  // namespace centerstone
