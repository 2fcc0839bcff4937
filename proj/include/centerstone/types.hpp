#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace centerstone {

using Point = Eigen::VectorXd;

// Tolerance ladder used across the library.  Rank decisions are relative
// (largest singular value / pivot), feasibility and interiority are absolute
// after inputs are scaled to workspace units.
struct Tolerances {
  static constexpr double rank = 1e-9;
  static constexpr double feas = 1e-9;
  static constexpr double interior = 1e-7;
};

struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InsufficientPointsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by the reference-check routines when an input exceeds the size they
// are willing to certify.  They never fall back to an approximation.
struct RefusedInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Finite list of points of one fixed dimension, stored row-per-point.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(Eigen::MatrixXd pts) : pts_(std::move(pts)) {
    if (pts_.rows() < 1) throw InsufficientPointsError("PointSet: need at least one point");
    if (pts_.cols() < 1) throw DimensionMismatchError("PointSet: dimension must be >= 1");
    if (!pts_.allFinite()) throw std::invalid_argument("PointSet: coordinates must be finite");
  }

  static PointSet from_rows(const std::vector<Point>& rows) {
    if (rows.empty()) throw InsufficientPointsError("PointSet: need at least one point");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw DimensionMismatchError("PointSet: inconsistent dimensions");
      m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return PointSet(m);
  }

  int size() const { return static_cast<int>(pts_.rows()); }
  int dim() const { return static_cast<int>(pts_.cols()); }
  Point point(int i) const { return pts_.row(i).transpose(); }
  const Eigen::MatrixXd& mat() const { return pts_; }

  // Length of the bounding-box diagonal; zero when all points coincide.
  double bbox_diameter() const {
    Eigen::VectorXd lo = pts_.colwise().minCoeff();
    Eigen::VectorXd hi = pts_.colwise().maxCoeff();
    return (hi - lo).norm();
  }

 private:
  Eigen::MatrixXd pts_;
};

// SplitMix64.  Deterministic across platforms; used for every seeded choice in
// the library so that identical (input, seed) pairs give identical results.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }

 private:
  uint64_t state_;
};

// Stable key derivation for substreams: every (seed, tag...) tuple maps to an
// independent-looking stream regardless of evaluation order.
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  SplitMix64 mix(seed ^ 0x6a09e667f3bcc909ULL);
  uint64_t k = mix.next();
  k ^= a + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
  k = SplitMix64(k).next();
  k ^= b + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
  k = SplitMix64(k).next();
  k ^= c + 0x9e3779b97f4a7c15ULL + (k << 6) + (k >> 2);
  return SplitMix64(k).next();
}

// Uniform point set in [-1,1]^d, the stock test distribution.
inline PointSet random_uniform_points(int n, int d, uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, 0x9001, static_cast<uint64_t>(n), static_cast<uint64_t>(d)));
  Eigen::MatrixXd m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return PointSet(m);
}

// ceil(a / b) for positive integers.
inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace centerstone
