#pragma once

#include "centerstone/types.hpp"

namespace centerstone::oracle {

// Reference implementations used to certify the fast paths.  They avoid the
// library's hull and LP code entirely: plain-array arithmetic, exhaustive
// enumeration, and explicit size caps (RefusedInputError beyond them, never a
// silent approximation).

// Exact halfspace depth.  Caps: d=2 n<=200, d=3 n<=80, d=4 n<=60, d=5 n<=40;
// d=1 is uncapped.
int oracle_depth(const Point& p, const PointSet& ps);

// True iff the intersection of the interiors of conv(T) over every subset T
// of size n - n_f is nonempty.  Supports d=1 (order statistics) and d=2
// (facet enumeration plus halfplane clipping) with n <= 15.
bool oracle_safe_point_exists(const PointSet& ps, int n_f);

// Closed-hull membership: d=1 interval test, d=2 hull walk with orientation
// tests, d in {3,4,5} exhaustive simplex cover with n <= 30.
bool oracle_in_hull(const Point& p, const PointSet& ps);

}  // namespace centerstone::oracle
