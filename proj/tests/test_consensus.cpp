#include <doctest.h>

#include <cmath>
#include <vector>

#include <centerstone/consensus.hpp>
#include <centerstone/geometry.hpp>
#include <centerstone/types.hpp>

using namespace centerstone;

namespace {

Point pt(std::initializer_list<double> coords) {
  Point p(coords.size());
  int i = 0;
  for (double v : coords) p(i++) = v;
  return p;
}

Box box2(double lx, double ly, double hx, double hy) {
  Box b;
  b.lo = pt({lx, ly});
  b.hi = pt({hx, hy});
  return b;
}

AgentSpec normal_agent(int id, Point x0) {
  AgentSpec a;
  a.id = id;
  a.x0 = std::move(x0);
  return a;
}

AgentSpec adversary(int id, Point x0, AdversaryBehavior::Kind kind) {
  AgentSpec a;
  a.id = id;
  a.adversarial = true;
  a.behavior.kind = kind;
  a.x0 = std::move(x0);
  return a;
}

ScenarioConfig base_config() {
  ScenarioConfig cfg;
  cfg.dimension = 2;
  cfg.workspace = box2(-2, -2, 2, 2);
  cfg.network.mode = Network::Mode::Disk;
  cfg.network.radius = 10.0;
  return cfg;
}

}  // namespace

TEST_SUITE("consensus") {

TEST_CASE("resilience bounds match the known table") {
  MethodSpec cp{SafePointMethod::Centerpoint, 2};
  MethodSpec tv{SafePointMethod::Tverberg, 2};
  MethodSpec ir2{SafePointMethod::IteratedRadon, 2};

  CHECK(resilience_bound(22, 2, cp) == 7);
  CHECK(resilience_bound(22, 2, tv) == 5);
  CHECK(resilience_bound(22, 2, ir2) == 5);

  CHECK(resilience_condition(7, 2, 2, cp));
  CHECK(resilience_condition(8, 2, 2, cp));
  CHECK(!resilience_condition(7, 2, 2, tv));
  CHECK(!resilience_condition(8, 2, 2, tv));

  CHECK(resilience_condition(3, 0, 2, cp));
  CHECK(resilience_condition(3, 0, 2, tv));
  CHECK(resilience_condition(3, 0, 2, ir2));

  CHECK_THROWS_AS(resilience_bound(0, 2, cp), std::invalid_argument);
}

TEST_CASE("method names round trip") {
  CHECK(method_name(parse_method("centerpoint")) == "centerpoint");
  CHECK(method_name(parse_method("tverberg")) == "tverberg");
  CHECK(method_name(parse_method("iterated-radon:3")) == "iterated-radon:3");
  CHECK(parse_method("iterated-radon").radon_r == 2);
  CHECK_THROWS_AS(parse_method("median"), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("iterated-radon:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("iterated-radon:x"), std::invalid_argument);
}

TEST_CASE("box helpers") {
  Box b = box2(-1, -2, 3, 4);
  CHECK(b.contains(pt({0, 0})));
  CHECK(!b.contains(pt({3.1, 0})));
  CHECK(b.contains(pt({3.1, 0}), 0.2));
  CHECK(b.clamp(pt({5, -7})) == pt({3, -2}));
  CHECK(b.nearest_corner(pt({2.9, -1.9})) == pt({3, -2}));
  CHECK(b.nearest_corner(pt({1, 1})) == pt({-1, -2}));  // ties pick lo
}

TEST_CASE("adversary behaviors anchor at x0") {
  Box ws = box2(-1, -1, 1, 1);

  AgentSpec still = adversary(0, pt({0.3, 0.2}), AdversaryBehavior::Kind::Stationary);
  CHECK(behavior_position(still, ws, 0) == still.x0);
  CHECK(behavior_position(still, ws, 7) == still.x0);

  AgentSpec osc = adversary(1, pt({0.0, 0.0}), AdversaryBehavior::Kind::Oscillating);
  osc.behavior.square_side = 0.1;
  CHECK(behavior_position(osc, ws, 0) == osc.x0);
  Point c1 = behavior_position(osc, ws, 1);
  CHECK(c1 == pt({0.05, 0.05}));
  CHECK(behavior_position(osc, ws, 2) == pt({-0.05, 0.05}));
  CHECK(behavior_position(osc, ws, 3) == pt({-0.05, -0.05}));
  CHECK(behavior_position(osc, ws, 4) == pt({0.05, -0.05}));
  CHECK(behavior_position(osc, ws, 5) == c1);  // period 4

  AgentSpec edge_osc = adversary(2, pt({0.98, 0.0}), AdversaryBehavior::Kind::Oscillating);
  edge_osc.behavior.square_side = 0.1;
  CHECK(behavior_position(edge_osc, ws, 1)(0) == doctest::Approx(1.0));  // clamped

  AgentSpec away = adversary(3, pt({0.9, 0.8}), AdversaryBehavior::Kind::MoveAway);
  CHECK(behavior_position(away, ws, 0) == away.x0);
  Point corner = pt({1, 1});
  double d0 = (corner - away.x0).norm();
  Point a1 = behavior_position(away, ws, 1);
  CHECK((corner - a1).norm() == doctest::Approx(d0 - 0.02));
  Point a100 = behavior_position(away, ws, 100);
  CHECK((a100 - corner).norm() == doctest::Approx(0.0));  // parked

  AgentSpec eq = adversary(4, pt({0.1, 0.1}), AdversaryBehavior::Kind::Equivocate);
  eq.behavior.inner = AdversaryBehavior::Kind::MoveAway;
  CHECK(behavior_position(eq, ws, 1) != eq.x0);  // moves per inner behavior
}

TEST_CASE("equivocators send per-receiver values") {
  AgentSpec eq = adversary(5, pt({0.1, 0.1}), AdversaryBehavior::Kind::Equivocate);
  eq.behavior.spread = 0.05;
  Point base = pt({0.1, 0.1});

  Point to2 = sent_value(eq, base, 3, 2, 42);
  Point to7 = sent_value(eq, base, 3, 7, 42);
  CHECK((to2 - base).norm() <= 0.05 + 1e-12);
  CHECK((to7 - base).norm() <= 0.05 + 1e-12);
  CHECK(to2 != to7);
  CHECK(sent_value(eq, base, 3, 2, 42) == to2);  // deterministic

  AgentSpec plain = normal_agent(0, pt({0.5, 0.5}));
  CHECK(sent_value(plain, pt({0.4, 0.4}), 3, 2, 42) == pt({0.4, 0.4}));
  AgentSpec still = adversary(1, pt({0.2, 0.2}), AdversaryBehavior::Kind::Stationary);
  CHECK(sent_value(still, pt({0.2, 0.2}), 3, 2, 42) == pt({0.2, 0.2}));
}

TEST_CASE("views collect neighbor values") {
  std::vector<AgentSpec> agents = {normal_agent(0, pt({0, 0})),
                                   normal_agent(1, pt({1, 0})),
                                   normal_agent(2, pt({0, 1}))};
  std::vector<Point> x = {agents[0].x0, agents[1].x0, agents[2].x0};
  Box ws = box2(-2, -2, 2, 2);

  Network complete;
  complete.mode = Network::Mode::Fixed;
  for (int s = 0; s < 3; ++s)
    for (int r = 0; r < 3; ++r) complete.edges.push_back({s, r});

  auto views = gather_views(complete, agents, x, ws, 0, 9);
  REQUIRE(views.size() == 3);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(views.at(i).size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(views.at(i).point(j) == x[j]);
  }

  // one equivocator, two normal receivers: views differ in exactly its row
  agents[2] = adversary(2, pt({0, 1}), AdversaryBehavior::Kind::Equivocate);
  auto views2 = gather_views(complete, agents, x, ws, 1, 9);
  REQUIRE(views2.size() == 2);
  CHECK(views2.at(0).point(0) == x[0]);
  CHECK(views2.at(0).point(1) == x[1]);
  CHECK(views2.at(1).point(0) == x[0]);
  CHECK(views2.at(1).point(1) == x[1]);
  CHECK(views2.at(0).point(2) != views2.at(1).point(2));

  // disk threshold is inclusive and excludes beyond-radius agents
  Network disk;
  disk.mode = Network::Mode::Disk;
  disk.radius = 0.45;
  std::vector<AgentSpec> pair = {normal_agent(0, pt({0, 0})),
                                 normal_agent(1, pt({0.5, 0}))};
  std::vector<Point> px = {pair[0].x0, pair[1].x0};
  auto dviews = gather_views(disk, pair, px, ws, 0, 9);
  CHECK(dviews.at(0).size() == 1);
  CHECK(dviews.at(1).size() == 1);
  px[1] = pt({0.45, 0});
  auto dviews2 = gather_views(disk, pair, px, ws, 0, 9);
  CHECK(dviews2.at(0).size() == 2);
}

TEST_CASE("fixed networks keep one self loop") {
  Network net;
  net.mode = Network::Mode::Fixed;
  net.edges = {{0, 0}, {1, 0}};
  std::vector<Point> x = {pt({0, 0}), pt({1, 1})};
  auto nbrs = neighborhoods(net, x);
  CHECK(nbrs[0] == std::vector<int>{0, 1});
  CHECK(nbrs[1] == std::vector<int>{1});
}

TEST_CASE("update arithmetic") {
  // all view points coincide, so the safe point is exactly that value
  PointSet view = PointSet::from_rows(
      {pt({1, 1}), pt({1, 1}), pt({1, 1}), pt({1, 1}), pt({1, 1})});
  MethodSpec cp{SafePointMethod::Centerpoint, 2};

  AdrcOutcome out = adrc_step(view, pt({0, 0}), 0.8, cp, 0, 3);
  CHECK(!out.held);
  CHECK(out.next(0) == doctest::Approx(0.8));
  CHECK(out.next(1) == doctest::Approx(0.8));

  AdrcOutcome full = adrc_step(view, pt({0, 0}), 1.0, cp, 0, 3);
  CHECK(full.next == *full.safe_point);

  AdrcOutcome stay = adrc_step(view, pt({1, 1}), 0.8, cp, 0, 3);
  CHECK((stay.next - pt({1, 1})).norm() < 1e-5);
}

TEST_CASE("update falls back to holding") {
  MethodSpec cp{SafePointMethod::Centerpoint, 2};
  MethodSpec tv{SafePointMethod::Tverberg, 2};
  PointSet tiny = PointSet::from_rows({pt({0, 0}), pt({1, 0})});
  AdrcOutcome held = adrc_step(tiny, pt({0, 0}), 0.8, cp, 0, 3);
  CHECK(held.held);
  CHECK(held.next == pt({0, 0}));
  CHECK(!held.safe_point.has_value());

  PointSet three = PointSet::from_rows({pt({0, 0}), pt({1, 0}), pt({0, 1})});
  AdrcOutcome ng = adrc_step(three, pt({0, 0}), 0.8, tv, 0, 3);
  CHECK(ng.held);  // three points in the plane are below the 2^d minimum

  PointSet four = PointSet::from_rows(
      {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})});
  AdrcOutcome ng2 = adrc_step(four, pt({0, 0}), 0.8, tv, 1, 3);
  CHECK(ng2.held);  // tverberg guarantees nothing for n_f=1 at n=4
  AdrcOutcome ok = adrc_step(four, pt({0, 0}), 0.8, tv, 0, 3);
  CHECK(!ok.held);
}

TEST_CASE("all normal agents agree quickly") {
  ScenarioConfig cfg = base_config();
  PointSet starts = random_uniform_points(10, 2, 123);
  for (int i = 0; i < 10; ++i) cfg.agents.push_back(normal_agent(i, starts.point(i)));
  cfg.max_steps = 100;
  cfg.seed = 5;

  auto reports = run(cfg);
  REQUIRE(!reports.empty());
  const StepReport& last = reports.back();
  CHECK(last.normal_diameter < 1e-3);
  CHECK(static_cast<int>(reports.size()) <= 101);
  for (const StepReport& rep : reports) CHECK(rep.safety_ok);

  // monotone hull: every next state is inside the current normal hull
  for (size_t t = 0; t + 1 < reports.size(); ++t) {
    std::vector<Point> cur;
    for (const auto& ar : reports[t].agents) cur.push_back(ar.x);
    PointSet hull = PointSet::from_rows(cur);
    for (const auto& ar : reports[t + 1].agents)
      CHECK(in_convex_hull(ar.x, hull));
  }
}

TEST_CASE("runs are deterministic and updates are local") {
  ScenarioConfig cfg = base_config();
  cfg.agents.push_back(normal_agent(0, pt({-0.5, -0.2})));
  cfg.agents.push_back(normal_agent(1, pt({0.4, -0.3})));
  cfg.agents.push_back(normal_agent(2, pt({0.1, 0.5})));
  cfg.agents.push_back(normal_agent(3, pt({-0.2, 0.3})));
  cfg.agents.push_back(normal_agent(4, pt({0.6, 0.4})));
  cfg.agents.push_back(adversary(5, pt({1.2, 1.2}), AdversaryBehavior::Kind::Oscillating));
  AgentSpec eq = adversary(6, pt({-1.2, 0.9}), AdversaryBehavior::Kind::Equivocate);
  eq.behavior.inner = AdversaryBehavior::Kind::Stationary;
  cfg.agents.push_back(eq);
  cfg.max_steps = 30;
  cfg.seed = 77;

  auto r1 = run(cfg);
  auto r2 = run(cfg);
  REQUIRE(r1.size() == r2.size());
  for (size_t t = 0; t < r1.size(); ++t) {
    for (size_t i = 0; i < r1[t].agents.size(); ++i) {
      CHECK(r1[t].agents[i].x == r2[t].agents[i].x);
      CHECK(r1[t].agents[i].held == r2[t].agents[i].held);
    }
    CHECK(r1[t].normal_diameter == r2[t].normal_diameter);
  }

  // replay single agents in isolation from logged positions
  for (size_t t = 0; t + 1 < r1.size(); ++t) {
    std::vector<Point> x;
    for (const auto& ar : r1[t].agents) x.push_back(ar.x);
    auto views = gather_views(cfg.network, cfg.agents, x, cfg.workspace,
                              static_cast<int>(t), cfg.seed);
    for (int id : {0, 2, 4}) {
      const PointSet& view = views.at(id);
      const int nf = std::max(
          0, resilience_bound(view.size(), cfg.dimension, cfg.method));
      AdrcOutcome out = adrc_step(
          view, x[id], cfg.alpha, cfg.method, nf,
          derive_seed(cfg.seed, 0x5afe, static_cast<uint64_t>(t),
                      static_cast<uint64_t>(id)));
      CHECK(out.next == r1[t + 1].agents[id].x);
    }
  }
}

TEST_CASE("isolated agents hold position safely") {
  ScenarioConfig cfg = base_config();
  cfg.network.radius = 0.1;
  cfg.agents.push_back(normal_agent(0, pt({-1, -1})));
  cfg.agents.push_back(normal_agent(1, pt({1, 1})));
  cfg.max_steps = 5;

  auto reports = run(cfg);
  for (const StepReport& rep : reports) {
    CHECK(rep.agents[0].x == pt({-1, -1}));
    CHECK(rep.agents[1].x == pt({1, 1}));
    CHECK(rep.safety_ok);
    if (rep.t > 0) continue;
    CHECK(rep.agents[0].held);
    CHECK(rep.agents[0].view_size == 1);
  }
  CHECK(reports.back().t == 5);  // never converges
}

TEST_CASE("config validation rejects bad inputs") {
  ScenarioConfig good = base_config();
  good.agents.push_back(normal_agent(0, pt({0, 0})));
  good.agents.push_back(normal_agent(1, pt({1, 1})));
  CHECK_NOTHROW(validate(good));

  auto expect_fail = [](ScenarioConfig cfg) {
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  };

  { ScenarioConfig c = good; c.dimension = 0; expect_fail(c); }
  { ScenarioConfig c = good; c.alpha = 0.0; expect_fail(c); }
  { ScenarioConfig c = good; c.alpha = 1.5; expect_fail(c); }
  { ScenarioConfig c = good; c.epsilon = 0.0; expect_fail(c); }
  { ScenarioConfig c = good; c.max_steps = 0; expect_fail(c); }
  { ScenarioConfig c = good; c.network.radius = 0.0; expect_fail(c); }
  { ScenarioConfig c = good; c.agents[1].id = 5; expect_fail(c); }
  { ScenarioConfig c = good; c.agents[1].x0 = pt({9, 9}); expect_fail(c); }
  { ScenarioConfig c = good; c.agents.clear(); expect_fail(c); }
  {
    ScenarioConfig c = good;
    c.workspace.hi = c.workspace.lo;
    expect_fail(c);
  }
  {
    ScenarioConfig c = good;
    c.network.mode = Network::Mode::Fixed;
    c.network.edges = {{0, 9}};
    expect_fail(c);
  }
  {
    ScenarioConfig c = good;
    for (auto& a : c.agents) a.adversarial = true;
    expect_fail(c);
  }
  {
    ScenarioConfig c = good;
    c.agents[1].adversarial = true;
    c.agents[1].behavior.kind = AdversaryBehavior::Kind::Equivocate;
    c.agents[1].behavior.inner = AdversaryBehavior::Kind::Equivocate;
    expect_fail(c);
  }
  {
    ScenarioConfig c = good;
    c.method.kind = SafePointMethod::IteratedRadon;
    c.method.radon_r = 1;
    expect_fail(c);
  }
  { ScenarioConfig c = good; c.alpha_schedule = {0.5, 0.0}; expect_fail(c); }
}

}
