#include <centerstone/consensus.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <centerstone/centerpoint.hpp>
#include <centerstone/geometry.hpp>
#include <centerstone/tverberg.hpp>

namespace centerstone {

namespace {

constexpr double kMoveAwaySpeed = 0.02;  // workspace units per step

void fail(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

}  // namespace

bool Box::contains(const Point& p, double tol) const {
  for (int c = 0; c < dim(); ++c)
    if (p(c) < lo(c) - tol || p(c) > hi(c) + tol) return false;
  return true;
}

Point Box::clamp(const Point& p) const {
  Point q = p;
  for (int c = 0; c < dim(); ++c) q(c) = std::clamp(q(c), lo(c), hi(c));
  return q;
}

Point Box::nearest_corner(const Point& p) const {
  Point q(dim());
  for (int c = 0; c < dim(); ++c)
    q(c) = (p(c) - lo(c) <= hi(c) - p(c)) ? lo(c) : hi(c);
  return q;
}

std::string method_name(const MethodSpec& m) {
  switch (m.kind) {
    case SafePointMethod::Centerpoint: return "centerpoint";
    case SafePointMethod::Tverberg: return "tverberg";
    case SafePointMethod::IteratedRadon:
      return "iterated-radon:" + std::to_string(m.radon_r);
  }
  return "?";
}

MethodSpec parse_method(const std::string& name) {
  MethodSpec m;
  if (name == "centerpoint") {
    m.kind = SafePointMethod::Centerpoint;
  } else if (name == "tverberg") {
    m.kind = SafePointMethod::Tverberg;
  } else if (name == "iterated-radon" || name.rfind("iterated-radon:", 0) == 0) {
    m.kind = SafePointMethod::IteratedRadon;
    if (auto pos = name.find(':'); pos != std::string::npos) {
      try {
        m.radon_r = std::stoi(name.substr(pos + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad iterated-radon r in '" + name + "'");
      }
    }
    if (m.radon_r < 2)
      throw std::invalid_argument("iterated-radon needs r >= 2");
  } else {
    throw std::invalid_argument("unknown method '" + name + "'");
  }
  return m;
}

namespace {

Point kind_position(AdversaryBehavior::Kind kind, const AdversaryBehavior& b,
                    const Point& anchor, const Box& ws, int t) {
  switch (kind) {
    case AdversaryBehavior::Kind::Stationary:
    case AdversaryBehavior::Kind::Equivocate:
      return anchor;
    case AdversaryBehavior::Kind::Oscillating: {
      if (t == 0) return anchor;
      Point p = anchor;
      const double h = b.square_side / 2.0;
      if (p.size() == 1) {
        p(0) += ((t - 1) % 2 == 0) ? h : -h;
      } else {
        static constexpr double kCx[4] = {1.0, -1.0, -1.0, 1.0};
        static constexpr double kCy[4] = {1.0, 1.0, -1.0, -1.0};
        const int c = (t - 1) % 4;
        p(0) += h * kCx[c];
        p(1) += h * kCy[c];
      }
      return ws.clamp(p);
    }
    case AdversaryBehavior::Kind::MoveAway: {
      const Point corner = ws.nearest_corner(anchor);
      const Point delta = corner - anchor;
      const double dist = delta.norm();
      if (dist < 1e-15) return corner;
      const double travel = std::min(kMoveAwaySpeed * t, dist);
      return anchor + delta * (travel / dist);
    }
  }
  return anchor;
}

}  // namespace

Point behavior_position(const AgentSpec& agent, const Box& workspace, int t) {
  const AdversaryBehavior& b = agent.behavior;
  const auto kind = (b.kind == AdversaryBehavior::Kind::Equivocate) ? b.inner
                                                                    : b.kind;
  return kind_position(kind, b, agent.x0, workspace, t);
}

Point sent_value(const AgentSpec& sender, const Point& true_position, int t,
                 int receiver, uint64_t seed) {
  if (!sender.adversarial ||
      sender.behavior.kind != AdversaryBehavior::Kind::Equivocate)
    return true_position;
  const double spread = sender.behavior.spread;
  SplitMix64 rng(derive_seed(seed, (0xEULL << 56) | static_cast<uint64_t>(t),
                             static_cast<uint64_t>(sender.id),
                             static_cast<uint64_t>(receiver)));
  Point off(true_position.size());
  for (int c = 0; c < off.size(); ++c) off(c) = rng.uniform(-spread, spread);
  const double norm = off.norm();
  if (norm > spread && norm > 0.0) off *= spread / norm;
  return true_position + off;
}

std::vector<std::vector<int>> neighborhoods(const Network& net,
                                            const std::vector<Point>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<int>> nbrs(n);
  if (net.mode == Network::Mode::Disk) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((x[j] - x[i]).norm() <= net.radius) nbrs[i].push_back(j);
  } else {
    for (const auto& [sender, receiver] : net.edges)
      nbrs[receiver].push_back(sender);
    for (int i = 0; i < n; ++i) nbrs[i].push_back(i);
    for (auto& v : nbrs) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }
  return nbrs;
}

std::map<int, PointSet> gather_views(const Network& net,
                                     const std::vector<AgentSpec>& agents,
                                     const std::vector<Point>& x,
                                     const Box& workspace, int t,
                                     uint64_t seed) {
  (void)workspace;
  const auto nbrs = neighborhoods(net, x);
  std::map<int, PointSet> views;
  for (size_t i = 0; i < agents.size(); ++i) {
    if (agents[i].adversarial) continue;
    std::vector<Point> rows;
    rows.reserve(nbrs[i].size());
    for (int j : nbrs[i])
      rows.push_back(sent_value(agents[j], x[j], t, agents[i].id, seed));
    views.emplace(agents[i].id, PointSet::from_rows(rows));
  }
  return views;
}

int resilience_bound(int n, int d, const MethodSpec& method) {
  if (n < 1) throw std::invalid_argument("resilience_bound needs n >= 1");
  switch (method.kind) {
    case SafePointMethod::Centerpoint: return ceil_div(n, d + 1) - 1;
    case SafePointMethod::Tverberg: return tverberg_parts_bound(n, d) - 1;
    case SafePointMethod::IteratedRadon:
      return radon_depth_bound(n, d, method.radon_r) - 1;
  }
  return 0;
}

bool resilience_condition(int n, int n_f, int d, const MethodSpec& method) {
  return n_f <= resilience_bound(n, d, method);
}

AdrcOutcome adrc_step(const PointSet& view, const Point& x_i, double alpha,
                      const MethodSpec& method, int n_f_assumed,
                      uint64_t seed) {
  AdrcOutcome out;
  out.next = x_i;
  out.held = true;
  try {
    std::optional<Point> s;
    switch (method.kind) {
      case SafePointMethod::Centerpoint:
        if (n_f_assumed <= resilience_bound(view.size(), view.dim(), method))
          s = exact_centerpoint(view, seed).point;
        break;
      case SafePointMethod::IteratedRadon:
        if (n_f_assumed <= resilience_bound(view.size(), view.dim(), method))
          s = iterated_radon_centerpoint(view, method.radon_r, seed).point;
        break;
      case SafePointMethod::Tverberg:
        s = tverberg_safe_point(view, n_f_assumed);
        break;
    }
    if (s) {
      out.safe_point = *s;
      out.next = alpha * (*s) + (1.0 - alpha) * x_i;
      out.held = false;
    }
  } catch (const InsufficientPointsError&) {
  } catch (const DimensionMismatchError&) {
  } catch (const DegenerateInputError&) {
  }
  return out;
}

void validate(const ScenarioConfig& cfg) {
  const int d = cfg.dimension;
  if (d < 1) fail("dimension must be >= 1");
  if (cfg.workspace.lo.size() != d || cfg.workspace.hi.size() != d)
    fail("workspace bounds must have length dimension");
  for (int c = 0; c < d; ++c) {
    if (!std::isfinite(cfg.workspace.lo(c)) ||
        !std::isfinite(cfg.workspace.hi(c)))
      fail("workspace bounds must be finite");
    if (!(cfg.workspace.lo(c) < cfg.workspace.hi(c)))
      fail("workspace lo must be strictly below hi in every coordinate");
  }
  if (cfg.agents.empty()) fail("at least one agent required");
  const double tol = 1e-9 * (1.0 + cfg.workspace.diameter());
  int normals = 0;
  for (size_t i = 0; i < cfg.agents.size(); ++i) {
    const AgentSpec& a = cfg.agents[i];
    if (a.id != static_cast<int>(i)) fail("agent ids must be 0..n-1 in order");
    if (a.x0.size() != d)
      fail("agent " + std::to_string(a.id) + ": x0 must have length dimension");
    if (!a.x0.allFinite())
      fail("agent " + std::to_string(a.id) + ": x0 must be finite");
    if (!cfg.workspace.contains(a.x0, tol))
      fail("agent " + std::to_string(a.id) + ": x0 outside workspace");
    if (!a.adversarial) ++normals;
    if (a.adversarial) {
      if (a.behavior.kind == AdversaryBehavior::Kind::Equivocate &&
          a.behavior.inner == AdversaryBehavior::Kind::Equivocate)
        fail("agent " + std::to_string(a.id) + ": equivocate inner behavior cannot itself equivocate");
      if (a.behavior.square_side < 0.0)
        fail("agent " + std::to_string(a.id) + ": square_side must be >= 0");
      if (a.behavior.spread < 0.0)
        fail("agent " + std::to_string(a.id) + ": spread must be >= 0");
    }
  }
  if (normals == 0) fail("at least one normal agent required");
  if (cfg.network.mode == Network::Mode::Disk) {
    if (!(cfg.network.radius > 0.0)) fail("disk radius must be positive");
  } else {
    const int n = static_cast<int>(cfg.agents.size());
    for (const auto& [s, r] : cfg.network.edges)
      if (s < 0 || s >= n || r < 0 || r >= n)
        fail("fixed edge (" + std::to_string(s) + "," + std::to_string(r) +
             ") out of range");
  }
  if (cfg.method.kind == SafePointMethod::IteratedRadon &&
      cfg.method.radon_r < 2)
    fail("iterated-radon needs r >= 2");
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  for (double a : cfg.alpha_schedule)
    if (!(a > 0.0 && a <= 1.0)) fail("alpha_schedule entries must be in (0, 1]");
  if (!(cfg.epsilon > 0.0)) fail("epsilon must be positive");
  if (cfg.max_steps < 1) fail("max_steps must be >= 1");
}

std::vector<StepReport> run(const ScenarioConfig& cfg) {
  validate(cfg);
  const int n = static_cast<int>(cfg.agents.size());
  const int d = cfg.dimension;

  std::vector<Point> x;
  x.reserve(n);
  std::vector<int> normal_ids;
  std::vector<Point> normal0;
  for (const AgentSpec& a : cfg.agents) {
    x.push_back(a.x0);
    if (!a.adversarial) {
      normal_ids.push_back(a.id);
      normal0.push_back(a.x0);
    }
  }
  const PointSet hull0 = PointSet::from_rows(normal0);

  std::vector<StepReport> reports;
  for (int t = 0;; ++t) {
    StepReport rep;
    rep.t = t;
    rep.agents.resize(n);
    for (int i = 0; i < n; ++i) rep.agents[i].x = x[i];

    double diam = 0.0;
    for (size_t a = 0; a < normal_ids.size(); ++a)
      for (size_t b = a + 1; b < normal_ids.size(); ++b)
        diam = std::max(diam, (x[normal_ids[a]] - x[normal_ids[b]]).norm());
    rep.normal_diameter = diam;

    rep.safety_ok = true;
    for (int id : normal_ids)
      if (!in_convex_hull(x[id], hull0)) {
        rep.safety_ok = false;
        break;
      }

    const auto nbrs = neighborhoods(cfg.network, x);
    const auto views = gather_views(cfg.network, cfg.agents, x,
                                    cfg.workspace, t, cfg.seed);
    const double alpha_t = (t < static_cast<int>(cfg.alpha_schedule.size()))
                               ? cfg.alpha_schedule[t]
                               : cfg.alpha;

    std::vector<Point> xnext = x;
    for (int i = 0; i < n; ++i) {
      if (cfg.agents[i].adversarial) {
        xnext[i] = behavior_position(cfg.agents[i], cfg.workspace, t + 1);
        continue;
      }
      const PointSet& view = views.at(i);
      const int m = view.size();
      const int bound = resilience_bound(m, d, cfg.method);
      const int nf = std::max(0, bound);
      AdrcOutcome out = adrc_step(view, x[i], alpha_t, cfg.method, nf,
                                  derive_seed(cfg.seed, 0x5afe,
                                              static_cast<uint64_t>(t),
                                              static_cast<uint64_t>(i)));
      int true_adv = 0;
      for (int j : nbrs[i])
        if (cfg.agents[j].adversarial) ++true_adv;
      AgentReport& ar = rep.agents[i];
      ar.safe_point = out.safe_point;
      ar.held = out.held;
      ar.view_size = m;
      ar.n_f_assumed = nf;
      ar.resilience_margin = bound - true_adv;
      ar.resilience_ok = true_adv <= bound;
      xnext[i] = out.next;
    }

    reports.push_back(std::move(rep));
    if (diam < cfg.epsilon) break;
    if (t == cfg.max_steps) break;
    x = std::move(xnext);
  }
  return reports;
}

}  // namespace centerstone
