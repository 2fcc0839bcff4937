#pragma once

#include <vector>

#include "centerstone/types.hpp"

namespace centerstone {

// Halfspace depth of p in ps: the largest k such that every closed halfspace
// containing p contains at least k points of ps.  Exact for degenerate inputs
// (coincident or flat point sets included); ties are resolved by a symbolic
// rotation of the candidate hyperplane, implemented as a recursion over the
// boundary set in one dimension lower.
int depth(const Point& p, const PointSet& ps);

// Maximum over representations p = sum(w_i x_i), sum(w_i)=1 of min_i w_i.
// Positive exactly when p is in the relative interior of the hull; negative
// when p is outside but in the affine span.
struct HullMargin {
  bool in_affine_span = false;
  double weight_margin = 0.0;
};
HullMargin hull_membership_margin(const Point& p, const PointSet& ps);

// strict=false tests closed-hull membership within the feasibility tolerance;
// strict=true requires a relative-interior certificate (min barycentric
// weight at least the interior tolerance).
bool in_convex_hull(const Point& p, const PointSet& ps, bool strict = false);

// Radon partition of exactly d+2 points: two disjoint index sets covering the
// input whose hulls intersect, plus a common point of the two hulls.
struct RadonPartition {
  std::vector<int> part_a;
  std::vector<int> part_b;
  Point witness;
};
RadonPartition radon_point(const PointSet& ps);

// True iff every (d+1)-subset is affinely independent (rank checked by
// pivoted elimination with a relative tolerance).  Vacuously true when
// n <= d.  Cost grows as C(n, d+1); intended for moderate n.
bool is_general_position(const PointSet& ps);

// Deterministic perturbation, magnitude 1e-7 x bounding-box diameter, one
// substream per point index.  Used by callers that need general position
// rather than erroring on degenerate inputs mid-run.
PointSet jittered(const PointSet& ps, uint64_t seed);

}  // namespace centerstone
