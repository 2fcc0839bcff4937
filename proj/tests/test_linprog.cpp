#include <doctest.h>

#include "centerstone/linprog.hpp"

using namespace centerstone;

namespace {
Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(vals.size());
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}
}  // namespace

TEST_SUITE("linprog") {

TEST_CASE("single row optimum picks cheaper column") {
  auto r = solve_equality_lp(mat({{1, 1}}), vec({1}), vec({-1, -2}));
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(-2.0));
  CHECK(r.x(0) == doctest::Approx(0.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
  CHECK(r.multipliers(0) == doctest::Approx(-2.0));
}

TEST_CASE("contradictory rows are infeasible") {
  auto r = solve_equality_lp(mat({{1, 0}, {1, 0}}), vec({1, 2}), vec({1, 1}));
  CHECK(r.status == LpResult::Status::Infeasible);
}

TEST_CASE("unbounded ray is reported") {
  auto r = solve_equality_lp(mat({{1, -1}}), vec({0}), vec({-1, 0}));
  CHECK(r.status == LpResult::Status::Unbounded);
}

TEST_CASE("two-row problem with duals satisfying complementary slackness") {
  auto A = mat({{1, 1, 1}, {0, 1, 2}});
  auto b = vec({1, 1});
  auto c = vec({0, 0, 1});
  auto r = solve_equality_lp(A, b, c);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == doctest::Approx(0.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
  // dual feasibility and strong duality
  Eigen::VectorXd slack = c - A.transpose() * r.multipliers;
  CHECK(slack.minCoeff() >= -1e-8);
  CHECK(b.dot(r.multipliers) == doctest::Approx(r.objective));
}

TEST_CASE("margin of the unit square is one at the center") {
  auto G = mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  auto h = vec({1, 1, 1, 1});
  auto r = solve_margin_lp(G, h);
  REQUIRE(r.feasible);
  REQUIRE(r.bounded);
  CHECK(r.margin == doctest::Approx(1.0));
  CHECK(r.x(0) == doctest::Approx(0.0));
  CHECK(r.x(1) == doctest::Approx(0.0));
}

TEST_CASE("margin of a right triangle is the inradius") {
  const double s = 1.0 / std::sqrt(2.0);
  auto G = mat({{-1, 0}, {0, -1}, {s, s}});
  auto h = vec({0, 0, s});
  auto r = solve_margin_lp(G, h);
  REQUIRE(r.feasible);
  REQUIRE(r.bounded);
  const double inradius = 1.0 - std::sqrt(0.5);
  CHECK(r.margin == doctest::Approx(inradius));
  CHECK(r.x(0) == doctest::Approx(inradius));
  CHECK(r.x(1) == doctest::Approx(inradius));
}

TEST_CASE("half-plane alone has unbounded margin") {
  auto r = solve_margin_lp(mat({{1, 0}}), vec({0}));
  CHECK(r.feasible);
  CHECK_FALSE(r.bounded);
}

}  // TEST_SUITE
