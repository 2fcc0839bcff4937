#pragma once

#include <optional>
#include <vector>

#include <centerstone/types.hpp>

namespace centerstone {

// Partition of the input indices into pairwise disjoint parts whose convex
// hulls all contain a common witness point.  More parts means the witness
// survives the removal of more points.
struct TverbergPartition {
  std::vector<std::vector<int>> parts;
  Point witness;

  int r() const { return static_cast<int>(parts.size()); }
};

// Guaranteed part count for n points in dimension d: ceil(n / 2^d).
int tverberg_parts_bound(int n, int d);

// Builds a partition with at least ceil(n / 2^d) parts by recursive lifting.
// In 1D the witness is the lower median and the parts are the median
// singleton (odd n) plus pairs straddling it.  In higher dimensions: drop the
// last coordinate, recurse, then compute each part's fiber interval over the
// lower witness (two small LPs), place the lifted witness at the lower median
// of the interval upper ends, and merge below/above parts pairwise so every
// merged hull still contains it.  Deterministic; no randomness involved.
// Throws InsufficientPointsError when n < 2^d.
TverbergPartition approx_tverberg(const PointSet& ps);

// Returns the partition witness when the guaranteed part count covers
// n_f + 1, i.e. n_f <= ceil(n / 2^d) - 1; std::nullopt otherwise.  The
// caller decides what to do without a guarantee.
std::optional<Point> tverberg_safe_point(const PointSet& ps, int n_f);

}  // namespace centerstone
