#include "centerstone/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "centerstone/linprog.hpp"

namespace centerstone {
namespace {

constexpr double kSideBand = 1e-12;  // relative band for on-hyperplane tests

// Minimum over generic directions u of #{v in V : u.v > 0}.  V is given as
// rows; k is the ambient dimension.  Generic means u avoids every hyperplane
// u.v = 0, so the minimum ranges over the open cells of the direction-sphere
// arrangement.  Every open cell touches a direction orthogonal to some
// independent (k-1)-subset, which is what the enumeration walks; vectors on
// the candidate hyperplane are resolved one dimension lower.
int min_strict_count(const Eigen::MatrixXd& V, int k) {
  const int n = static_cast<int>(V.rows());
  if (n == 0) return 0;

  // Work inside the span when V does not span R^k: a generic direction of
  // the span realizes the same strict counts.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  double smax = sing.size() ? sing(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sing.size(); ++i)
    if (sing(i) > Tolerances::rank * smax) ++rank;
  if (rank == 0) return 0;
  if (rank < k) {
    Eigen::MatrixXd Vr = V * svd.matrixV().leftCols(rank);
    return min_strict_count(Vr, rank);
  }

  if (k == 1) {
    int pos = 0, neg = 0;
    for (int i = 0; i < n; ++i) (V(i, 0) > 0 ? pos : neg)++;
    return std::min(pos, neg);
  }

  std::vector<double> norms(n);
  for (int i = 0; i < n; ++i) norms[i] = V.row(i).norm();

  int best = n;
  std::vector<int> idx(k - 1);
  for (int i = 0; i < k - 1; ++i) idx[i] = i;
  Eigen::MatrixXd S(k - 1, k);
  while (true) {
    for (int i = 0; i < k - 1; ++i) S.row(i) = V.row(idx[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(S, Eigen::ComputeFullV);
    const auto& ss = ssvd.singularValues();
    bool spanning = ss.size() == k - 1 && ss(k - 2) > Tolerances::rank * ss(0);
    if (spanning) {
      Eigen::VectorXd u0 = ssvd.matrixV().col(k - 1);  // unit normal of span(S)
      int pos = 0, neg = 0;
      std::vector<int> boundary;
      for (int i = 0; i < n; ++i) {
        double dot = u0.dot(V.row(i));
        if (dot > kSideBand * norms[i]) ++pos;
        else if (dot < -kSideBand * norms[i]) ++neg;
        else boundary.push_back(i);
      }
      int base = std::min(pos, neg);
      if (base < best) {
        // Boundary vectors already lie in the hyperplane; express them in an
        // orthonormal basis of it and recurse.
        Eigen::MatrixXd W = ssvd.matrixV().leftCols(k - 1);
        Eigen::MatrixXd B(static_cast<int>(boundary.size()), k - 1);
        for (size_t i = 0; i < boundary.size(); ++i)
          B.row(static_cast<int>(i)) = V.row(boundary[i]) * W;
        int sub = min_strict_count(B, k - 1);
        best = std::min(best, base + sub);
      }
    }
    // next (k-1)-combination
    int pos_i = k - 2;
    while (pos_i >= 0 && idx[pos_i] == n - (k - 1) + pos_i) --pos_i;
    if (pos_i < 0) break;
    ++idx[pos_i];
    for (int j = pos_i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

// Rank of the affine system spanned by the given points, by elimination with
// partial pivoting and a relative tolerance.
bool affinely_independent(const Eigen::MatrixXd& diffs) {
  const int rows = static_cast<int>(diffs.rows());
  const int cols = static_cast<int>(diffs.cols());
  if (rows > cols) return false;
  Eigen::MatrixXd M = diffs;
  double scale = 0.0;
  for (int i = 0; i < rows; ++i) scale = std::max(scale, M.row(i).norm());
  if (scale == 0.0) return false;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    double pmax = Tolerances::rank * scale;
    for (int i = r; i < rows; ++i) {
      if (std::abs(M(i, c)) > pmax) { pmax = std::abs(M(i, c)); piv = i; }
    }
    if (piv < 0) continue;
    M.row(piv).swap(M.row(r));
    for (int i = r + 1; i < rows; ++i) M.row(i) -= (M(i, c) / M(r, c)) * M.row(r);
    ++r;
  }
  return r == rows;
}

}  // namespace

int depth(const Point& p, const PointSet& ps) {
  const int d = ps.dim();
  if (p.size() != d) throw DimensionMismatchError("depth: point dimension mismatch");
  const int n = ps.size();

  double scale = std::max({1.0, p.cwiseAbs().maxCoeff(), ps.mat().cwiseAbs().maxCoeff()});
  std::vector<int> offplane;
  int coincident = 0;
  for (int i = 0; i < n; ++i) {
    if ((ps.point(i) - p).norm() <= kSideBand * scale) ++coincident;
    else offplane.push_back(i);
  }
  Eigen::MatrixXd V(static_cast<int>(offplane.size()), d);
  for (size_t i = 0; i < offplane.size(); ++i)
    V.row(static_cast<int>(i)) = (ps.point(offplane[i]) - p).transpose();
  return coincident + min_strict_count(V, d);
}

HullMargin hull_membership_margin(const Point& p, const PointSet& ps) {
  const int d = ps.dim();
  if (p.size() != d) throw DimensionMismatchError("hull_membership_margin: dimension mismatch");
  const int n = ps.size();

  double s = ps.bbox_diameter();
  if (s <= 0) s = std::max(1.0, p.cwiseAbs().maxCoeff());

  // max t  s.t.  sum(l_i (x_i - p)) = 0, sum(l_i) = 1, l_i >= t;
  // substitute l_i = t + m_i with m_i >= 0 and t = tp - tm.
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i) X.row(i) = (ps.point(i) - p).transpose() / s;
  Eigen::VectorXd colsum = X.colwise().sum();

  Eigen::MatrixXd A(d + 1, n + 2);
  A.block(0, 0, d, n) = X.transpose();
  A.block(0, n, d, 1) = colsum;
  A.block(0, n + 1, d, 1) = -colsum;
  A.row(d).setOnes();
  A(d, n) = static_cast<double>(n);
  A(d, n + 1) = -static_cast<double>(n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 2);
  c(n) = -1.0;
  c(n + 1) = 1.0;

  HullMargin out;
  LpResult lp = solve_equality_lp(A, b, c);
  if (lp.status != LpResult::Status::Optimal) {
    out.in_affine_span = false;
    return out;
  }
  out.in_affine_span = true;
  out.weight_margin = -lp.objective;
  return out;
}

bool in_convex_hull(const Point& p, const PointSet& ps, bool strict) {
  HullMargin m = hull_membership_margin(p, ps);
  if (!m.in_affine_span) return false;
  return strict ? m.weight_margin >= Tolerances::interior
                : m.weight_margin >= -Tolerances::feas;
}

RadonPartition radon_point(const PointSet& ps) {
  const int d = ps.dim();
  const int n = ps.size();
  if (n != d + 2) throw InsufficientPointsError("radon_point: need exactly d+2 points");

  // Nonzero c with sum(c_i x_i) = 0 and sum(c_i) = 0: kernel of the
  // (d+1) x (d+2) affine system.
  Eigen::MatrixXd A(d + 1, n);
  A.topRows(d) = ps.mat().transpose();
  A.row(d).setOnes();
  double scale = std::max(1.0, ps.mat().cwiseAbs().maxCoeff());
  A.topRows(d) /= scale;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  lu.setThreshold(Tolerances::rank);
  if (lu.dimensionOfKernel() > 1)
    throw DegenerateInputError("radon_point: affine dependence space has dimension > 1");
  if (lu.dimensionOfKernel() < 1)
    throw DegenerateInputError("radon_point: no affine dependence found");
  Eigen::VectorXd cvec = lu.kernel().col(0);

  double cmax = cvec.cwiseAbs().maxCoeff();
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (std::abs(cvec(i)) > kSideBand * cmax) { first = i; break; }
  }
  if (first < 0) throw DegenerateInputError("radon_point: null dependence vector");
  if (cvec(first) < 0) cvec = -cvec;

  RadonPartition out;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (cvec(i) > kSideBand * cmax) {
      out.part_a.push_back(i);
      total += cvec(i);
    } else {
      out.part_b.push_back(i);
    }
  }
  out.witness = Eigen::VectorXd::Zero(d);
  for (int i : out.part_a) out.witness += (cvec(i) / total) * ps.point(i);
  return out;
}

bool is_general_position(const PointSet& ps) {
  const int n = ps.size();
  const int d = ps.dim();
  if (n <= d) return true;

  std::vector<int> idx(d + 1);
  for (int i = 0; i <= d; ++i) idx[i] = i;
  Eigen::MatrixXd diffs(d, d);
  while (true) {
    for (int i = 0; i < d; ++i)
      diffs.row(i) = (ps.point(idx[i + 1]) - ps.point(idx[0])).transpose();
    if (!affinely_independent(diffs)) return false;
    int pos = d;
    while (pos >= 0 && idx[pos] == n - (d + 1) + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j <= d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

PointSet jittered(const PointSet& ps, uint64_t seed) {
  double mag = 1e-7 * ps.bbox_diameter();
  if (mag <= 0.0) mag = 1e-7 * std::max(1.0, ps.mat().cwiseAbs().maxCoeff());
  Eigen::MatrixXd m = ps.mat();
  for (int i = 0; i < ps.size(); ++i) {
    SplitMix64 rng(derive_seed(seed, 0x4a177e12ULL, static_cast<uint64_t>(i)));
    for (int c = 0; c < ps.dim(); ++c) m(i, c) += rng.uniform(-mag, mag);
  }
  return PointSet(m);
}

}  // namespace centerstone
