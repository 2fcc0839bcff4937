#include "centerstone/centerpoint.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "centerstone/geometry.hpp"
#include "centerstone/linprog.hpp"

namespace centerstone {
namespace {

constexpr double kSideBand = 1e-12;

struct ExactOut {
  Point p;
  bool interior = false;
};

// Constraints cutting out the depth-k region: for every hyperplane through a
// d-subset, if its open side holds at most k-1 points, no depth-k point can
// be strictly on that side.  min_count restricts to the near-critical window
// used by the fast first pass; facet-inducing hyperplanes sit at exactly k-1
// in general position, the buffer absorbs near-ties.
void constraints_2d(const Eigen::MatrixXd& Y, int k, int min_count,
                    std::vector<Eigen::RowVectorXd>& gs, std::vector<double>& hs) {
  const int n = static_cast<int>(Y.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double dx = Y(j, 0) - Y(i, 0), dy = Y(j, 1) - Y(i, 1);
      double len = std::hypot(dx, dy);
      if (len < 1e-14) continue;
      Eigen::RowVectorXd u(2);
      u << -dy / len, dx / len;
      double off = u(0) * Y(i, 0) + u(1) * Y(i, 1);
      int q = 0;
      for (int t = 0; t < n; ++t)
        if (u(0) * Y(t, 0) + u(1) * Y(t, 1) > off + kSideBand) ++q;
      if (q <= k - 1 && q >= min_count) {
        gs.push_back(u);
        hs.push_back(off);
      }
    }
  }
}

void constraints_3d(const Eigen::MatrixXd& Y, int k, int min_count,
                    std::vector<Eigen::RowVectorXd>& gs, std::vector<double>& hs) {
  const int n = static_cast<int>(Y.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::Vector3d a = (Y.row(j) - Y.row(i)).transpose();
      for (int l = j + 1; l < n; ++l) {
        Eigen::Vector3d b = (Y.row(l) - Y.row(i)).transpose();
        Eigen::Vector3d nrm = a.cross(b);
        double len = nrm.norm();
        if (len < 1e-14) continue;
        nrm /= len;
        double off = nrm.dot(Y.row(i));
        int qp = 0, qn = 0;
        for (int t = 0; t < n; ++t) {
          double v = nrm.dot(Y.row(t)) - off;
          if (v > kSideBand) ++qp;
          else if (v < -kSideBand) ++qn;
        }
        if (qp <= k - 1 && qp >= min_count) {
          gs.push_back(nrm.transpose());
          hs.push_back(off);
        }
        if (qn <= k - 1 && qn >= min_count) {
          gs.push_back(-nrm.transpose());
          hs.push_back(-off);
        }
      }
    }
  }
}

bool region_candidate(const Eigen::MatrixXd& Y, int k, int min_count, Point& out,
                      double& margin) {
  const int d = static_cast<int>(Y.cols());
  std::vector<Eigen::RowVectorXd> gs;
  std::vector<double> hs;
  if (d == 2) constraints_2d(Y, k, min_count, gs, hs);
  else constraints_3d(Y, k, min_count, gs, hs);
  if (gs.empty()) return false;
  Eigen::MatrixXd G(gs.size(), d);
  Eigen::VectorXd h(gs.size());
  for (size_t r = 0; r < gs.size(); ++r) {
    G.row(static_cast<Eigen::Index>(r)) = gs[r];
    h(static_cast<Eigen::Index>(r)) = hs[r];
  }
  MarginResult mr = solve_margin_lp(G, h);
  if (!mr.feasible || !mr.bounded) return false;
  out = mr.x;
  margin = mr.margin;
  return true;
}

ExactOut exact_1d(const PointSet& ps, int k) {
  const int n = ps.size();
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = ps.mat()(i, 0);
  std::sort(xs.begin(), xs.end());
  double lo = xs[k - 1], hi = xs[n - k];
  ExactOut o;
  o.p = Point::Constant(1, 0.5 * (lo + hi));
  o.interior = hi - lo > Tolerances::interior * std::max(1.0, ps.bbox_diameter());
  return o;
}

// Exact depth-k witness for a full-rank set in its own dimension.  Works in a
// centered unit frame; tries the near-critical constraint subset, the full
// constraint set, then jittered rebuilds, each verified by the exact depth.
ExactOut exact_full_rank(const PointSet& ps, int k, uint64_t seed) {
  const int d = ps.dim();
  const int n = ps.size();
  Eigen::RowVectorXd c = ps.mat().colwise().mean();
  double s = ps.bbox_diameter();
  if (s <= 0) s = 1.0;
  Eigen::MatrixXd Y = (ps.mat().rowwise() - c) / s;
  PointSet ylevel(Y);

  auto lift = [&](const Point& y) -> Point { return c.transpose() + s * y; };

  int narrow = std::max(0, k - 1 - (2 * d + 2));
  for (int phase = 0; phase < 2; ++phase) {
    int min_count = phase == 0 ? narrow : 0;
    if (phase == 1 && narrow == 0) break;  // identical to phase 0
    Point y;
    double margin = 0.0;
    if (region_candidate(Y, k, min_count, y, margin) && depth(y, ylevel) >= k) {
      ExactOut o;
      o.p = lift(y);
      o.interior = margin > Tolerances::interior;
      return o;
    }
  }

  for (int attempt = 1; attempt <= 5; ++attempt) {
    PointSet yj = jittered(ylevel, derive_seed(seed, 0xce11, static_cast<uint64_t>(attempt)));
    Point y;
    double margin = 0.0;
    if (region_candidate(yj.mat(), k, 0, y, margin) && depth(y, ylevel) >= k) {
      ExactOut o;
      o.p = lift(y);
      return o;
    }
  }

  // best-effort: deepest among centroid and input points (depth-k point may
  // be unreachable only for adversarially degenerate inputs; callers verify)
  Point best = Point::Zero(d);
  int best_depth = depth(best, ylevel);
  for (int i = 0; i < n; ++i) {
    Point cand = Y.row(i).transpose();
    int dep = depth(cand, ylevel);
    if (dep > best_depth) {
      best_depth = dep;
      best = cand;
    }
  }
  ExactOut o;
  o.p = lift(best);
  return o;
}

ExactOut exact_impl(const PointSet& ps, int k, uint64_t seed) {
  const int d = ps.dim();
  if (d == 1) return exact_1d(ps, k);

  Eigen::MatrixXd diffs = ps.mat().rowwise() - ps.mat().row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinV);
  int rank = 0;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > Tolerances::rank * sv(0)) ++rank;
  if (sv.size() == 0 || sv(0) == 0.0) rank = 0;

  if (rank == 0) {
    ExactOut o;
    o.p = ps.point(0);  // all points coincide; depth there is n
    return o;
  }
  if (rank < d) {
    Eigen::MatrixXd B = svd.matrixV().leftCols(rank);
    ExactOut sub = exact_impl(PointSet(diffs * B), k, seed);
    ExactOut o;
    o.p = ps.point(0) + B * sub.p;  // depth is preserved for in-span points
    return o;
  }
  return exact_full_rank(ps, k, seed);
}

Point batch_witness(const std::vector<Point>& pts, uint64_t seed, int round, uint64_t bi) {
  PointSet bp = PointSet::from_rows(pts);
  try {
    return radon_point(bp).witness;
  } catch (const DegenerateInputError&) {
  }
  // A repeated value is itself a Radon witness (the two copies are one-point
  // parts with intersecting hulls) and keeps whatever depth the value already
  // has, unlike a jittered recovery.
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return pts[i];
  for (int a = 1; a <= 5; ++a) {
    PointSet pj = jittered(bp, derive_seed(seed, 0x0b11, static_cast<uint64_t>(round), bi * 8 + a));
    try {
      return radon_point(pj).witness;
    } catch (const DegenerateInputError&) {
    }
  }
  // batch dominated by coincident points; its centroid is still in its hull
  Point avg = Point::Zero(pts[0].size());
  for (const Point& p : pts) avg += p;
  return avg / static_cast<double>(pts.size());
}

}  // namespace

int radon_depth_bound(int n, int d, int r) {
  // smallest m with m * d^(r/(r-1)) >= n, i.e. m^(r-1) d^r >= n^(r-1),
  // evaluated in exact integer arithmetic via long double (values < 2^63)
  auto powi = [](long double base, int e) {
    long double v = 1.0L;
    while (e-- > 0) v *= base;
    return v;
  };
  long double target = powi(n, r - 1);
  long double dr = powi(d, r);
  for (int m = 1; m <= n; ++m)
    if (powi(m, r - 1) * dr >= target) return m;
  return n;
}

CenterpointResult centerpoint_2d(const PointSet& ps, uint64_t seed) {
  if (ps.dim() != 2) throw DimensionMismatchError("centerpoint_2d: dimension must be 2");
  if (ps.size() < 3) throw InsufficientPointsError("centerpoint_2d: need at least 3 points");
  const int k = ceil_div(ps.size(), 3);
  ExactOut o = exact_impl(ps, k, seed);
  CenterpointResult r;
  r.point = o.p;
  r.guaranteed_depth = k;
  r.method = CenterpointResult::Method::Exact2D;
  r.interior = o.interior;
  return r;
}

CenterpointResult centerpoint_3d(const PointSet& ps, uint64_t seed) {
  if (ps.dim() != 3) throw DimensionMismatchError("centerpoint_3d: dimension must be 3");
  if (ps.size() < 4) throw InsufficientPointsError("centerpoint_3d: need at least 4 points");
  const int k = ceil_div(ps.size(), 4);
  ExactOut o = exact_impl(ps, k, seed);
  CenterpointResult r;
  r.point = o.p;
  r.guaranteed_depth = k;
  r.method = CenterpointResult::Method::Exact3D;
  r.interior = o.interior;
  return r;
}

CenterpointResult exact_centerpoint(const PointSet& ps, uint64_t seed) {
  if (ps.dim() == 1) {
    const int k = ceil_div(ps.size(), 2);
    ExactOut o = exact_impl(ps, k, seed);
    CenterpointResult r;
    r.point = o.p;
    r.guaranteed_depth = k;
    r.method = CenterpointResult::Method::Exact1D;
    r.interior = o.interior;
    return r;
  }
  if (ps.dim() == 2) return centerpoint_2d(ps, seed);
  if (ps.dim() == 3) return centerpoint_3d(ps, seed);
  throw DimensionMismatchError("exact_centerpoint: dimension must be 1, 2 or 3");
}

CenterpointResult interior_centerpoint(const PointSet& ps, int dim, uint64_t seed) {
  if (dim != 2 && dim != 3) throw DimensionMismatchError("interior_centerpoint: dim must be 2 or 3");
  if (ps.dim() != dim) throw DimensionMismatchError("interior_centerpoint: point set dimension mismatch");
  if (ps.size() < dim + 1)
    throw InsufficientPointsError("interior_centerpoint: need at least dim+1 points");
  const int d = dim;
  const int n = ps.size();
  const int k = ceil_div(n, d + 1);

  Eigen::MatrixXd diffs = ps.mat().rowwise() - ps.mat().row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(0) > 0 && sv(i) > Tolerances::rank * sv(0)) ++rank;
  bool flat = rank < d;

  if (!flat) {
    for (int round = 0; round < 5; ++round) {
      std::vector<Point> qs;
      bool ok = true;
      for (int j = 0; j <= d && ok; ++j) {
        PointSet pj = jittered(ps, derive_seed(seed, 0x1c7e, static_cast<uint64_t>(round),
                                               static_cast<uint64_t>(j)));
        ExactOut o = exact_impl(pj, k, derive_seed(seed, 0x99, static_cast<uint64_t>(round),
                                                   static_cast<uint64_t>(j)));
        if (depth(o.p, ps) < k) ok = false;  // must hold on the unjittered set
        else qs.push_back(o.p);
      }
      if (!ok || !is_general_position(PointSet::from_rows(qs))) continue;
      Point avg = Point::Zero(d);
      for (const Point& q : qs) avg += q;
      avg /= static_cast<double>(qs.size());
      // each vertex is in the (convex) depth-k region, and they span a
      // full-dimensional simplex: the centroid is interior to the region
      if (depth(avg, ps) >= k) {
        CenterpointResult r;
        r.point = avg;
        r.guaranteed_depth = k;
        r.method = d == 2 ? CenterpointResult::Method::Exact2D : CenterpointResult::Method::Exact3D;
        r.interior = true;
        return r;
      }
    }
  }
  CenterpointResult r = exact_centerpoint(ps, seed);
  r.interior = false;  // no interiority certificate, e.g. single-point region
  return r;
}

CenterpointResult iterated_radon_centerpoint(const PointSet& ps, int r, uint64_t seed) {
  const int d = ps.dim();
  const int n = ps.size();
  if (d < 2) throw DimensionMismatchError("iterated_radon_centerpoint: dimension must be >= 2");
  if (r < 2) throw std::invalid_argument("iterated_radon_centerpoint: r must be > 1");
  if (n < d + 2) throw InsufficientPointsError("iterated_radon_centerpoint: need at least d+2 points");

  auto cascade = [&](uint64_t run_seed) -> Point {
    std::vector<Point> work(n);
    for (int i = 0; i < n; ++i) work[i] = ps.point(i);
    const size_t batch = static_cast<size_t>(d) + 2;
    int round = 0;
    while (work.size() > 1) {
      SplitMix64 rng(derive_seed(run_seed, 0x17ad, static_cast<uint64_t>(round)));
      for (size_t i = work.size() - 1; i > 0; --i)
        std::swap(work[i], work[rng.below(i + 1)]);
      const size_t full = work.size() / batch;
      const size_t left = work.size() % batch;
      std::vector<Point> next;
      next.reserve(full + 1);
      for (size_t b = 0; b < full; ++b) {
        std::vector<Point> grp(work.begin() + static_cast<long>(b * batch),
                               work.begin() + static_cast<long>((b + 1) * batch));
        next.push_back(batch_witness(grp, run_seed, round, b));
      }
      if (left > 0) {
        std::vector<Point> grp(work.begin() + static_cast<long>(full * batch), work.end());
        while (grp.size() < batch) {
          // resample from the working multiset, preferring values not already
          // in the batch: a duplicate pair collapses the Radon point onto
          // that value, which wastes the batch
          Point pick = work[rng.below(work.size())];
          for (int tries = 0; tries < 64; ++tries) {
            bool dup = false;
            for (const Point& g : grp)
              if (g == pick) { dup = true; break; }
            if (!dup) break;
            pick = work[rng.below(work.size())];
          }
          grp.push_back(pick);
        }
        next.push_back(batch_witness(grp, run_seed, round, full));
      }
      work = std::move(next);
      ++round;
    }
    return work[0];
  };

  // The grouping is free; rerun the cascade under fresh groupings until the
  // measured depth reaches the claimed bound, keeping the deepest point seen.
  const int bound = radon_depth_bound(n, d, r);
  Point best;
  int best_depth = -1;
  for (int restart = 0; restart < 16; ++restart) {
    Point cand = cascade(derive_seed(seed, 0x9d0e, static_cast<uint64_t>(restart)));
    int dep = depth(cand, ps);
    if (dep > best_depth) {
      best_depth = dep;
      best = cand;
    }
    if (best_depth >= bound) break;
  }

  CenterpointResult out;
  out.point = best;
  out.guaranteed_depth = bound;
  out.method = CenterpointResult::Method::IteratedRadon;
  out.radon_r = r;
  return out;
}

}  // namespace centerstone
