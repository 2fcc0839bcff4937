#pragma once

#include "centerstone/types.hpp"

namespace centerstone {

// Point together with the depth bound its construction guarantees.  The bound
// is the contract value (ceil(n/(d+1)) for the exact methods, the weaker
// iterated-Radon bound otherwise), not the measured depth, which may be
// larger.  interior is set only when a strict-interiority certificate of the
// depth region was established.
struct CenterpointResult {
  enum class Method { Exact1D, Exact2D, Exact3D, IteratedRadon };
  Point point;
  int guaranteed_depth = 0;
  Method method = Method::Exact2D;
  int radon_r = 0;  // configured r when method == IteratedRadon
  bool interior = false;
};

// Exact planar centerpoint: depth >= ceil(n/3).  The depth region is cut out
// by all lines through point pairs whose open side holds fewer than
// ceil(n/3) points; a max-margin LP picks a witness, whose depth is then
// re-verified exactly.  Degenerate inputs go through span reduction or a
// seeded jitter-and-verify chain.  Requires n >= 3.
CenterpointResult centerpoint_2d(const PointSet& ps, uint64_t seed = 0);

// Exact spatial centerpoint: depth >= ceil(n/4), planes through point
// triples, otherwise as centerpoint_2d.  Requires n >= 4.
CenterpointResult centerpoint_3d(const PointSet& ps, uint64_t seed = 0);

// Dimension dispatch over the exact methods (d = 1, 2 or 3; depth bound
// ceil(n/(d+1))).
CenterpointResult exact_centerpoint(const PointSet& ps, uint64_t seed = 0);

// Centroid of dim+1 centerpoints of independently jittered copies.  When the
// copies' centerpoints are affinely independent and each keeps depth >=
// ceil(n/(d+1)) on the unjittered input, the centroid is certified interior
// (interior=true).  Falls back to the exact centerpoint with interior=false
// after 5 failed rounds, e.g. when the depth region is a single point.
CenterpointResult interior_centerpoint(const PointSet& ps, int dim, uint64_t seed = 0);

// Depth the Radon cascade guarantees for n points in dimension d at
// aggressiveness r: ceil(n / d^(r/(r-1))), in exact integer arithmetic.
int radon_depth_bound(int n, int d, int r);

// Approximate centerpoint for d >= 2: repeatedly shuffle the working multiset
// into batches of d+2 (resampling the shortfall with replacement), replace
// each batch by its Radon point, until one point remains; regroup and retry
// until the measured depth reaches radon_depth_bound(n, d, r).  The
// configured r > 1 sets that claimed bound; requires n >= d+2.
CenterpointResult iterated_radon_centerpoint(const PointSet& ps, int r, uint64_t seed = 0);

}  // namespace centerstone
