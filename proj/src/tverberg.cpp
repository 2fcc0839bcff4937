#include <centerstone/tverberg.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <centerstone/linprog.hpp>

namespace centerstone {

namespace {

struct Level {
  std::vector<std::vector<int>> parts;
  Eigen::VectorXd witness;
};

// 1D base case: witness is the lower median, parts are the median singleton
// (odd n) followed by straddling pairs from the innermost outward.
Level level_1d(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows());
  std::vector<int> ord(n);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](int a, int b) {
    if (X(a, 0) != X(b, 0)) return X(a, 0) < X(b, 0);
    return a < b;
  });

  Level out;
  const int med = (n - 1) / 2;
  out.witness = Eigen::VectorXd::Constant(1, X(ord[med], 0));
  if (n % 2 == 1) out.parts.push_back({ord[med]});
  for (int j = n / 2 - 1; j >= 0; --j)
    out.parts.push_back({ord[j], ord[n - 1 - j]});
  return out;
}

// Fiber of a part over the lower-level witness: the range of the last
// coordinate among convex combinations of the part that project onto w.
struct Fiber {
  int part;
  double lo = 0.0;
  double hi = 0.0;
  bool ok = false;
};

Fiber fiber_interval(const Eigen::MatrixXd& X, int dim,
                     const std::vector<int>& part, const Eigen::VectorXd& w) {
  const int m = static_cast<int>(part.size());
  Eigen::MatrixXd A(dim, m);
  Eigen::VectorXd b(dim), c(m);
  for (int j = 0; j < m; ++j) {
    A.col(j).head(dim - 1) = X.row(part[j]).head(dim - 1).transpose();
    A(dim - 1, j) = 1.0;
    c(j) = X(part[j], dim - 1);
  }
  b.head(dim - 1) = w;
  b(dim - 1) = 1.0;

  Fiber f;
  LpResult low = solve_equality_lp(A, b, c);
  if (low.status != LpResult::Status::Optimal) return f;
  LpResult high = solve_equality_lp(A, b, -c);
  if (high.status != LpResult::Status::Optimal) return f;
  f.lo = low.objective;
  f.hi = -high.objective;
  f.ok = true;
  return f;
}

Level build_level(const Eigen::MatrixXd& X, int dim, double eps) {
  if (dim == 1) return level_1d(X);

  Level low = build_level(X, dim - 1, eps);

  std::vector<Fiber> fibers;
  fibers.reserve(low.parts.size());
  for (int p = 0; p < static_cast<int>(low.parts.size()); ++p) {
    Fiber f = fiber_interval(X, dim, low.parts[p], low.witness);
    f.part = p;
    if (f.ok) fibers.push_back(f);
  }
  if (fibers.empty())
    throw DegenerateInputError("partition lift lost every part");

  // Lifted witness coordinate: lower median of the fiber upper ends.  That
  // leaves at least half the parts reaching it from below and, through the
  // interval lower ends, enough reaching from above to pair up.
  std::vector<double> his;
  his.reserve(fibers.size());
  for (const Fiber& f : fibers) his.push_back(f.hi);
  std::nth_element(his.begin(),
                   his.begin() + (static_cast<long>(his.size()) - 1) / 2,
                   his.end());
  const double t = his[(his.size() - 1) / 2];

  std::vector<Fiber> below, above;
  Level out;
  for (const Fiber& f : fibers) {
    if (f.lo <= t + eps && f.hi >= t - eps)
      out.parts.push_back(low.parts[f.part]);
    else if (f.hi < t - eps)
      below.push_back(f);
    else
      above.push_back(f);
  }
  std::sort(below.begin(), below.end(),
            [](const Fiber& a, const Fiber& b) { return a.hi < b.hi; });
  std::sort(above.begin(), above.end(),
            [](const Fiber& a, const Fiber& b) { return a.lo < b.lo; });

  // A below part reaches (w, hi) and an above part reaches (w, lo) with
  // hi < t < lo, so the merged hull contains (w, t) on the segment between
  // them.  Unpaired leftovers are discarded.
  const size_t pairs = std::min(below.size(), above.size());
  for (size_t k = 0; k < pairs; ++k) {
    std::vector<int> merged = low.parts[below[k].part];
    const std::vector<int>& other = low.parts[above[k].part];
    merged.insert(merged.end(), other.begin(), other.end());
    out.parts.push_back(std::move(merged));
  }

  out.witness.resize(dim);
  out.witness.head(dim - 1) = low.witness;
  out.witness(dim - 1) = t;
  return out;
}

}  // namespace

int tverberg_parts_bound(int n, int d) {
  long long denom = 1;
  for (int i = 0; i < d && denom <= n; ++i) denom <<= 1;
  return static_cast<int>((n + denom - 1) / denom);
}

TverbergPartition approx_tverberg(const PointSet& ps) {
  const int n = ps.size();
  const int d = ps.dim();
  if (d >= 31 || n < (1 << d))
    throw InsufficientPointsError("approx_tverberg needs at least 2^d points, got " +
                                  std::to_string(n));

  const double eps = 1e-9 * std::max(1.0, ps.bbox_diameter());
  Level top = build_level(ps.mat(), d, eps);

  TverbergPartition out;
  out.parts = std::move(top.parts);
  out.witness = std::move(top.witness);
  return out;
}

std::optional<Point> tverberg_safe_point(const PointSet& ps, int n_f) {
  if (n_f < 0)
    throw std::invalid_argument("n_f must be non-negative, got " +
                                std::to_string(n_f));
  if (n_f > tverberg_parts_bound(ps.size(), ps.dim()) - 1) return std::nullopt;
  return approx_tverberg(ps).witness;
}

}  // namespace centerstone
