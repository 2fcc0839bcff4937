#include "centerstone/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace centerstone::oracle {
namespace {

constexpr double kBand = 1e-12;

using Row = std::vector<double>;
using Rows = std::vector<Row>;

double dot(const Row& a, const Row& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Row& a) { return std::sqrt(dot(a, a)); }

// Modified Gram-Schmidt with re-orthogonalization; keeps vectors whose
// residual exceeds the relative rank tolerance.
Rows gs_basis(const Rows& rows, size_t cap) {
  Rows basis;
  for (const Row& v : rows) {
    double nv = norm(v);
    if (nv == 0.0) continue;
    Row r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Row& b : basis) {
        double c = dot(r, b);
        for (size_t i = 0; i < r.size(); ++i) r[i] -= c * b[i];
      }
    }
    double nr = norm(r);
    if (nr > Tolerances::rank * nv) {
      for (double& x : r) x /= nr;
      basis.push_back(std::move(r));
      if (basis.size() == cap) break;
    }
  }
  return basis;
}

// Unit vector orthogonal to span(basis) inside R^k (basis has k-1 vectors).
Row complete_normal(const Rows& basis, int k) {
  Row best;
  double best_res = -1.0;
  for (int j = 0; j < k; ++j) {
    Row e(k, 0.0);
    e[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Row& b : basis) {
        double c = dot(e, b);
        for (int i = 0; i < k; ++i) e[i] -= c * b[i];
      }
    }
    double res = norm(e);
    if (res > best_res) {
      best_res = res;
      best = e;
    }
  }
  for (double& x : best) x /= best_res;
  return best;
}

// Minimum over generic directions of the strictly-positive count; vectors on
// a candidate hyperplane are resolved by recursing inside that hyperplane.
int rec_min_strict(const Rows& V, int k) {
  const int n = static_cast<int>(V.size());
  if (n == 0) return 0;

  Rows basis = gs_basis(V, static_cast<size_t>(k));
  const int r = static_cast<int>(basis.size());
  if (r == 0) return 0;
  if (r < k) {
    Rows coords(V.size(), Row(r));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j) coords[i][j] = dot(V[i], basis[j]);
    return rec_min_strict(coords, r);
  }

  if (k == 1) {
    int pos = 0, neg = 0;
    for (const Row& v : V) (v[0] > 0 ? pos : neg)++;
    return std::min(pos, neg);
  }

  std::vector<double> norms(n);
  for (int i = 0; i < n; ++i) norms[i] = norm(V[i]);

  int best = n;
  std::vector<int> idx(k - 1);
  for (int i = 0; i < k - 1; ++i) idx[i] = i;
  while (true) {
    Rows sub;
    sub.reserve(k - 1);
    for (int i : idx) sub.push_back(V[i]);
    Rows sb = gs_basis(sub, static_cast<size_t>(k - 1));
    if (static_cast<int>(sb.size()) == k - 1) {
      Row u0 = complete_normal(sb, k);
      int pos = 0, neg = 0;
      std::vector<int> boundary;
      for (int i = 0; i < n; ++i) {
        double dv = dot(u0, V[i]);
        if (dv > kBand * norms[i]) ++pos;
        else if (dv < -kBand * norms[i]) ++neg;
        else boundary.push_back(i);
      }
      int base = std::min(pos, neg);
      if (base < best) {
        Rows B(boundary.size(), Row(k - 1));
        for (size_t i = 0; i < boundary.size(); ++i)
          for (int j = 0; j < k - 1; ++j) B[i][j] = dot(V[boundary[i]], sb[j]);
        best = std::min(best, base + rec_min_strict(B, k - 1));
      }
    }
    int p = k - 2;
    while (p >= 0 && idx[p] == n - (k - 1) + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int j = p + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

// 2D: the strict count is piecewise constant in the direction angle, changing
// only where a point sits on the boundary; evaluating at the midpoint of each
// arc between consecutive critical angles covers every open cell.
int sweep_2d(const Point& p, const PointSet& ps, double scale) {
  const int n = ps.size();
  int coincident = 0;
  std::vector<std::pair<double, double>> vs;
  std::vector<double> angs;
  for (int i = 0; i < n; ++i) {
    double vx = ps.mat()(i, 0) - p(0);
    double vy = ps.mat()(i, 1) - p(1);
    if (std::hypot(vx, vy) <= kBand * scale) {
      ++coincident;
      continue;
    }
    vs.emplace_back(vx, vy);
    double phi = std::atan2(vy, vx);
    for (double a : {phi + M_PI / 2, phi - M_PI / 2}) {
      while (a < 0) a += 2 * M_PI;
      while (a >= 2 * M_PI) a -= 2 * M_PI;
      angs.push_back(a);
    }
  }
  if (vs.empty()) return n;
  std::sort(angs.begin(), angs.end());
  angs.erase(std::unique(angs.begin(), angs.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             angs.end());
  int best = static_cast<int>(vs.size());
  for (size_t i = 0; i < angs.size(); ++i) {
    double next = (i + 1 < angs.size()) ? angs[i + 1] : angs[0] + 2 * M_PI;
    double theta = 0.5 * (angs[i] + next);
    double ux = std::cos(theta), uy = std::sin(theta);
    int cnt = 0;
    for (const auto& [vx, vy] : vs)
      if (ux * vx + uy * vy > 0) ++cnt;
    best = std::min(best, cnt);
  }
  return coincident + best;
}

struct ClipPoly {
  std::vector<std::pair<double, double>> v;

  // Keep the side a.x <= c.
  void clip(double ax, double ay, double c) {
    if (v.empty()) return;
    std::vector<std::pair<double, double>> out;
    const size_t m = v.size();
    for (size_t i = 0; i < m; ++i) {
      auto [px, py] = v[i];
      auto [qx, qy] = v[(i + 1) % m];
      double fp = ax * px + ay * py - c;
      double fq = ax * qx + ay * qy - c;
      if (fp <= 0) out.emplace_back(px, py);
      if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
        double t = fp / (fp - fq);
        out.emplace_back(px + t * (qx - px), py + t * (qy - py));
      }
    }
    v = std::move(out);
  }

  double area() const {
    double a = 0.0;
    const size_t m = v.size();
    for (size_t i = 0; i < m; ++i) {
      auto [px, py] = v[i];
      auto [qx, qy] = v[(i + 1) % m];
      a += px * qy - qx * py;
    }
    return 0.5 * std::abs(a);
  }
};

bool safe_point_exists_2d(const PointSet& ps, int n_f) {
  const int n = ps.size();
  const int s = n - n_f;
  if (s < 3) return false;  // hulls of fewer points have empty interior

  double scale = std::max(1.0, ps.bbox_diameter());
  double band = kBand * scale * scale;

  // Directed hull edges of any subset come from ordered point pairs, so the
  // full constraint system dedupes to at most n(n-1) halfplanes.
  std::vector<std::vector<char>> emitted(n, std::vector<char>(n, 0));
  ClipPoly poly;
  {
    double lox = ps.mat().col(0).minCoeff() - scale;
    double hix = ps.mat().col(0).maxCoeff() + scale;
    double loy = ps.mat().col(1).minCoeff() - scale;
    double hiy = ps.mat().col(1).maxCoeff() + scale;
    poly.v = {{lox, loy}, {hix, loy}, {hix, hiy}, {lox, hiy}};
  }

  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  while (true) {
    for (int a = 0; a < s; ++a) {
      for (int b = 0; b < s; ++b) {
        if (a == b) continue;
        int i = idx[a], j = idx[b];
        if (emitted[i][j]) continue;
        double dx = ps.mat()(j, 0) - ps.mat()(i, 0);
        double dy = ps.mat()(j, 1) - ps.mat()(i, 1);
        bool edge = true;
        for (int t = 0; t < s && edge; ++t) {
          double cx = ps.mat()(idx[t], 0) - ps.mat()(i, 0);
          double cy = ps.mat()(idx[t], 1) - ps.mat()(i, 1);
          if (dx * cy - dy * cx < -band) edge = false;
        }
        if (edge) {
          emitted[i][j] = 1;
          // subset lies in {cross(d, x - x_i) >= 0}; clip to that side
          double ax = dy, ay = -dx;
          double c = ax * ps.mat()(i, 0) + ay * ps.mat()(i, 1);
          poly.clip(ax, ay, c);
        }
      }
    }
    if (poly.v.size() < 3) return false;
    int p = s - 1;
    while (p >= 0 && idx[p] == n - s + p) --p;
    if (p < 0) break;
    ++idx[p];
    for (int j = p + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  double area_tol = Tolerances::feas * scale;
  return poly.v.size() >= 3 && poly.area() > area_tol * area_tol;
}

// Monotone-chain hull, counterclockwise, no interior collinear points.
std::vector<int> hull_2d(const PointSet& ps, double band) {
  const int n = ps.size();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (ps.mat()(a, 0) != ps.mat()(b, 0)) return ps.mat()(a, 0) < ps.mat()(b, 0);
    return ps.mat()(a, 1) < ps.mat()(b, 1);
  });
  auto cross3 = [&](int o, int a, int b) {
    return (ps.mat()(a, 0) - ps.mat()(o, 0)) * (ps.mat()(b, 1) - ps.mat()(o, 1)) -
           (ps.mat()(a, 1) - ps.mat()(o, 1)) * (ps.mat()(b, 0) - ps.mat()(o, 0));
  };
  std::vector<int> h;
  for (int pass = 0; pass < 2; ++pass) {
    size_t start = h.size();
    for (int i : order) {
      while (h.size() >= start + 2 && cross3(h[h.size() - 2], h.back(), i) <= band) h.pop_back();
      h.push_back(i);
    }
    h.pop_back();
    std::reverse(order.begin(), order.end());
  }
  if (h.empty()) h.push_back(order[0]);
  return h;
}

bool in_hull_2d(const Point& p, const PointSet& ps) {
  double scale = std::max(1.0, ps.bbox_diameter());
  double band = Tolerances::feas * scale * scale;
  std::vector<int> h = hull_2d(ps, kBand * scale * scale);
  if (h.size() == 1) {
    return (ps.point(h[0]) - p).norm() <= Tolerances::feas * scale;
  }
  if (h.size() == 2) {
    Point a = ps.point(h[0]), b = ps.point(h[1]);
    Point ab = b - a, ap = p - a;
    double cr = ab(0) * ap(1) - ab(1) * ap(0);
    if (std::abs(cr) > band) return false;
    double t = ab.dot(ap) / ab.squaredNorm();
    return t >= -Tolerances::feas && t <= 1 + Tolerances::feas;
  }
  const size_t m = h.size();
  for (size_t i = 0; i < m; ++i) {
    Point a = ps.point(h[i]), b = ps.point(h[(i + 1) % m]);
    double cr = (b(0) - a(0)) * (p(1) - a(1)) - (b(1) - a(1)) * (p(0) - a(0));
    if (cr < -band) return false;
  }
  return true;
}

// Gaussian solve with partial pivoting; returns false on a near-singular
// system.
bool solve_square(std::vector<Row> M, Row rhs, Row& out) {
  const int k = static_cast<int>(rhs.size());
  double scale = 0.0;
  for (const Row& r : M)
    for (double x : r) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return false;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    if (std::abs(M[piv][c]) < Tolerances::rank * scale) return false;
    std::swap(M[piv], M[c]);
    std::swap(rhs[piv], rhs[c]);
    for (int r = 0; r < k; ++r) {
      if (r == c) continue;
      double f = M[r][c] / M[c][c];
      for (int cc = c; cc < k; ++cc) M[r][cc] -= f * M[c][cc];
      rhs[r] -= f * rhs[c];
    }
  }
  out.resize(k);
  for (int c = 0; c < k; ++c) out[c] = rhs[c] / M[c][c];
  return true;
}

bool in_hull_simplices(const Point& p, const PointSet& ps);

// Flat sets are handled by projecting everything into the span of the
// differences and retrying one dimension lower.
bool in_hull_projected(const Point& p, const PointSet& ps) {
  const int n = ps.size();
  const int d = ps.dim();
  Rows diffs;
  for (int i = 1; i < n; ++i) {
    Row r(d);
    for (int c = 0; c < d; ++c) r[c] = ps.mat()(i, c) - ps.mat()(0, c);
    diffs.push_back(std::move(r));
  }
  Rows basis = gs_basis(diffs, static_cast<size_t>(d));
  const int r = static_cast<int>(basis.size());
  Row rel(d);
  for (int c = 0; c < d; ++c) rel[c] = p(c) - ps.mat()(0, c);
  // p must be inside the span up to tolerance
  Row resid = rel;
  for (const Row& b : basis) {
    double cp = dot(resid, b);
    for (int c = 0; c < d; ++c) resid[c] -= cp * b[c];
  }
  double scale = std::max(1.0, ps.bbox_diameter());
  if (norm(resid) > Tolerances::feas * scale) return false;
  if (r == 0) return true;  // all points coincide and p matches them

  Eigen::MatrixXd m(n, r);
  Eigen::VectorXd q(r);
  for (int j = 0; j < r; ++j) {
    q(j) = dot(rel, basis[j]);
    for (int i = 0; i < n; ++i) {
      Row di(d);
      for (int c = 0; c < d; ++c) di[c] = ps.mat()(i, c) - ps.mat()(0, c);
      m(i, j) = dot(di, basis[j]);
    }
  }
  PointSet flat(m);
  if (r == 1) {
    double lo = m.col(0).minCoeff(), hi = m.col(0).maxCoeff();
    return q(0) >= lo - Tolerances::feas * scale && q(0) <= hi + Tolerances::feas * scale;
  }
  if (r == 2) return in_hull_2d(q, flat);
  return in_hull_simplices(q, flat);
}

bool in_hull_simplices(const Point& p, const PointSet& ps) {
  const int n = ps.size();
  const int d = ps.dim();
  for (int i = 0; i < n; ++i)
    if ((ps.point(i) - p).norm() <= Tolerances::feas * std::max(1.0, ps.bbox_diameter()))
      return true;
  if (n < d + 1) return in_hull_projected(p, ps);

  bool any_solved = false;
  std::vector<int> idx(d + 1);
  for (int i = 0; i <= d; ++i) idx[i] = i;
  while (true) {
    std::vector<Row> M(d, Row(d));
    Row rhs(d);
    for (int c = 0; c < d; ++c) {
      rhs[c] = p(c) - ps.mat()(idx[0], c);
      for (int j = 0; j < d; ++j) M[c][j] = ps.mat()(idx[j + 1], c) - ps.mat()(idx[0], c);
    }
    Row w;
    if (solve_square(M, rhs, w)) {
      any_solved = true;
      double sum = 0.0;
      bool ok = true;
      for (double x : w) {
        if (x < -Tolerances::feas) ok = false;
        sum += x;
      }
      if (ok && sum <= 1 + Tolerances::feas) return true;
    }
    int pos = d;
    while (pos >= 0 && idx[pos] == n - (d + 1) + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j <= d; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!any_solved) return in_hull_projected(p, ps);
  return false;
}

}  // namespace

int oracle_depth(const Point& p, const PointSet& ps) {
  const int d = ps.dim();
  if (p.size() != d) throw DimensionMismatchError("oracle_depth: dimension mismatch");
  const int n = ps.size();
  static constexpr int kCaps[] = {0, 0, 200, 80, 60, 40};
  if (d >= 6) throw RefusedInputError("oracle_depth: dimension above 5 refused");
  if (d >= 2 && n > kCaps[d]) throw RefusedInputError("oracle_depth: point count above certified cap");

  double scale = std::max({1.0, p.cwiseAbs().maxCoeff(), ps.mat().cwiseAbs().maxCoeff()});
  if (d == 1) {
    int lo = 0, hi = 0;
    for (int i = 0; i < n; ++i) {
      double x = ps.mat()(i, 0);
      if (x <= p(0) + kBand * scale) ++lo;
      if (x >= p(0) - kBand * scale) ++hi;
    }
    return std::min(lo, hi);
  }
  if (d == 2) return sweep_2d(p, ps, scale);

  int coincident = 0;
  Rows V;
  for (int i = 0; i < n; ++i) {
    Row v(d);
    double nv = 0.0;
    for (int c = 0; c < d; ++c) {
      v[c] = ps.mat()(i, c) - p(c);
      nv += v[c] * v[c];
    }
    if (std::sqrt(nv) <= kBand * scale) ++coincident;
    else V.push_back(std::move(v));
  }
  return coincident + rec_min_strict(V, d);
}

bool oracle_safe_point_exists(const PointSet& ps, int n_f) {
  const int n = ps.size();
  const int d = ps.dim();
  if (n_f < 0 || n_f >= n) throw std::invalid_argument("oracle_safe_point_exists: need 0 <= n_f < n");
  if (n > 15) throw RefusedInputError("oracle_safe_point_exists: point count above certified cap");
  if (d == 1) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = ps.mat()(i, 0);
    std::sort(xs.begin(), xs.end());
    return xs[n_f] < xs[n - n_f - 1];
  }
  if (d == 2) return safe_point_exists_2d(ps, n_f);
  throw RefusedInputError("oracle_safe_point_exists: dimension above 2 refused");
}

bool oracle_in_hull(const Point& p, const PointSet& ps) {
  const int d = ps.dim();
  if (p.size() != d) throw DimensionMismatchError("oracle_in_hull: dimension mismatch");
  if (d == 1) {
    double scale = std::max(1.0, ps.bbox_diameter());
    double lo = ps.mat().col(0).minCoeff(), hi = ps.mat().col(0).maxCoeff();
    return p(0) >= lo - Tolerances::feas * scale && p(0) <= hi + Tolerances::feas * scale;
  }
  if (d == 2) return in_hull_2d(p, ps);
  if (d > 5) throw RefusedInputError("oracle_in_hull: dimension above 5 refused");
  if (ps.size() > 30) throw RefusedInputError("oracle_in_hull: point count above certified cap");
  return in_hull_simplices(p, ps);
}

}  // namespace centerstone::oracle
