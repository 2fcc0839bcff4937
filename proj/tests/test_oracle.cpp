#include <doctest.h>

#include <Eigen/Dense>

#include "centerstone/geometry.hpp"
#include "centerstone/oracle.hpp"

using namespace centerstone;
using namespace centerstone::oracle;

namespace {
PointSet pts(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return PointSet(m);
}

Point pt(std::initializer_list<double> vals) {
  Point v(vals.size());
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

// Three corners with m nearly coincident points each; the spread is small
// enough that each corner cluster acts like a fattened vertex.
PointSet corner_clusters(int m) {
  Eigen::MatrixXd c(3, 2);
  c << 0, 0, 1, 0, 0, 1;
  Eigen::MatrixXd out(3 * m, 2);
  SplitMix64 rng(42);
  for (int v = 0; v < 3; ++v)
    for (int i = 0; i < m; ++i)
      out.row(v * m + i) = c.row(v) + Eigen::RowVector2d(rng.uniform(-1e-4, 1e-4),
                                                         rng.uniform(-1e-4, 1e-4));
  return PointSet(out);
}
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("reference depth matches frozen cases") {
  auto line = pts({{1}, {2}, {3}, {4}, {5}});
  CHECK(oracle_depth(pt({3}), line) == 3);
  CHECK(oracle_depth(pt({0.5}), line) == 0);

  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  CHECK(oracle_depth(pt({1.0 / 3, 1.0 / 3}), tri) == 1);
  CHECK(oracle_depth(pt({0, 0}), tri) == 1);
  CHECK(oracle_depth(pt({5, 5}), tri) == 0);

  auto sq = pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(oracle_depth(pt({0.5, 0.5}), sq) == 2);

  auto col = pts({{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
  CHECK(oracle_depth(pt({2, 2}), col) == 3);
  CHECK(oracle_depth(pt({2, 1}), col) == 0);

  auto oct = pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  CHECK(oracle_depth(pt({0, 0, 0}), oct) == 3);

  auto tet = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(oracle_depth(pt({0.25, 0.25, 0.25}), tet) == 1);
  CHECK(oracle_depth(pt({1, 1, 1}), tet) == 0);
}

TEST_CASE("reference depth agrees with the production depth in 2d") {
  for (uint64_t s = 0; s < 40; ++s) {
    int n = 3 + static_cast<int>(SplitMix64(s).below(28));
    auto ps = random_uniform_points(n, 2, 1000 + s);
    SplitMix64 rng(derive_seed(7, s));
    for (int q = 0; q < 3; ++q) {
      Point p = pt({rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2)});
      CAPTURE(s);
      CHECK(oracle_depth(p, ps) == depth(p, ps));
    }
    Point member = ps.point(static_cast<int>(rng.below(n)));
    CHECK(oracle_depth(member, ps) == depth(member, ps));
  }
}

TEST_CASE("reference depth agrees with the production depth in 3d and 4d") {
  for (uint64_t s = 0; s < 12; ++s) {
    int n = 4 + static_cast<int>(SplitMix64(s).below(16));
    auto ps = random_uniform_points(n, 3, 2000 + s);
    SplitMix64 rng(derive_seed(8, s));
    Point p = pt({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    CHECK(oracle_depth(p, ps) == depth(p, ps));
    Point member = ps.point(static_cast<int>(rng.below(n)));
    CHECK(oracle_depth(member, ps) == depth(member, ps));
  }
  for (uint64_t s = 0; s < 4; ++s) {
    auto ps = random_uniform_points(12, 4, 3000 + s);
    Point p = Point::Zero(4);
    CHECK(oracle_depth(p, ps) == depth(p, ps));
  }
}

TEST_CASE("reference depth refuses oversized input") {
  CHECK_THROWS_AS(oracle_depth(pt({0, 0}), random_uniform_points(201, 2, 1)), RefusedInputError);
  CHECK_THROWS_AS(oracle_depth(pt({0, 0, 0}), random_uniform_points(81, 3, 1)), RefusedInputError);
  CHECK_THROWS_AS(oracle_depth(Point::Zero(6), random_uniform_points(7, 6, 1)), RefusedInputError);
}

TEST_CASE("safe-point existence on the line") {
  auto line = pts({{0}, {1}, {2}, {3}, {4}});
  CHECK(oracle_safe_point_exists(line, 0));
  CHECK(oracle_safe_point_exists(line, 1));
  CHECK_FALSE(oracle_safe_point_exists(line, 2));
}

TEST_CASE("safe-point existence needs a full-dimensional intersection") {
  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  CHECK(oracle_safe_point_exists(tri, 0));
  CHECK_FALSE(oracle_safe_point_exists(tri, 1));

  auto sq = pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(oracle_safe_point_exists(sq, 0));
  // the four drop-one triangles meet only at the center point
  CHECK_FALSE(oracle_safe_point_exists(sq, 1));

  auto col = pts({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK_FALSE(oracle_safe_point_exists(col, 0));
}

TEST_CASE("nested squares survive one deletion") {
  auto ps = pts({{-1, -1}, {1, -1}, {1, 1}, {-1, 1},
                 {-0.3, -0.3}, {0.3, -0.3}, {0.3, 0.3}, {-0.3, 0.3}});
  CHECK(oracle_safe_point_exists(ps, 0));
  CHECK(oracle_safe_point_exists(ps, 1));
}

TEST_CASE("corner clusters flip exactly at the cluster size") {
  for (int m = 2; m <= 4; ++m) {
    auto ps = corner_clusters(m);
    CAPTURE(m);
    CHECK(oracle_safe_point_exists(ps, m - 1));
    CHECK_FALSE(oracle_safe_point_exists(ps, m));
  }
}

TEST_CASE("safe-point existence input validation") {
  auto line = pts({{0}, {1}, {2}});
  CHECK_THROWS_AS(oracle_safe_point_exists(line, 3), std::invalid_argument);
  CHECK_THROWS_AS(oracle_safe_point_exists(line, -1), std::invalid_argument);
  CHECK_THROWS_AS(oracle_safe_point_exists(random_uniform_points(16, 2, 5), 1), RefusedInputError);
  CHECK_THROWS_AS(oracle_safe_point_exists(random_uniform_points(8, 3, 5), 1), RefusedInputError);
}

TEST_CASE("reference hull test matches frozen cases") {
  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  CHECK(oracle_in_hull(pt({0.25, 0.25}), tri));
  CHECK(oracle_in_hull(pt({0, 0}), tri));
  CHECK(oracle_in_hull(pt({0.5, 0}), tri));
  CHECK_FALSE(oracle_in_hull(pt({0.6, 0.6}), tri));

  auto seg = pts({{0, 0}, {1, 1}});
  CHECK(oracle_in_hull(pt({0.5, 0.5}), seg));
  CHECK_FALSE(oracle_in_hull(pt({2, 2}), seg));
  CHECK_FALSE(oracle_in_hull(pt({1, 0}), seg));

  auto tet = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(oracle_in_hull(pt({0.25, 0.25, 0.25}), tet));
  CHECK(oracle_in_hull(pt({0.5, 0.5, 0}), tet));
  CHECK_FALSE(oracle_in_hull(pt({1, 1, 1}), tet));

  // flat set inside 3d: membership still decided inside the plane
  auto flat = pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(oracle_in_hull(pt({0.2, 0.2, 0}), flat));
  CHECK_FALSE(oracle_in_hull(pt({0.2, 0.2, 0.1}), flat));
}

TEST_CASE("reference hull test agrees with the production hull test") {
  for (uint64_t s = 0; s < 30; ++s) {
    int n = 3 + static_cast<int>(SplitMix64(s).below(12));
    auto ps = random_uniform_points(n, 2, 4000 + s);
    SplitMix64 rng(derive_seed(9, s));
    for (int q = 0; q < 4; ++q) {
      Point p = pt({rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)});
      CAPTURE(s);
      CHECK(oracle_in_hull(p, ps) == in_convex_hull(p, ps));
    }
  }
  for (uint64_t s = 0; s < 15; ++s) {
    int n = 4 + static_cast<int>(SplitMix64(s).below(10));
    auto ps = random_uniform_points(n, 3, 5000 + s);
    SplitMix64 rng(derive_seed(10, s));
    Point p = pt({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    CHECK(oracle_in_hull(p, ps) == in_convex_hull(p, ps));
  }
}

TEST_CASE("reference hull test refuses oversized input") {
  CHECK_THROWS_AS(oracle_in_hull(Point::Zero(3), random_uniform_points(31, 3, 1)), RefusedInputError);
  CHECK_THROWS_AS(oracle_in_hull(Point::Zero(6), random_uniform_points(7, 6, 1)), RefusedInputError);
}

}  // TEST_SUITE
