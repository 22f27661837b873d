#pragma once

#include <vector>

namespace blochlab {

// Radial grids for work on the unit disk. Everything interesting happens in
// the last sliver before |z| = 1, so uniform-in-r grids are useless; both
// grids below cluster geometrically toward the boundary.

// n+1 radii r_i = 1 - 2^(-14 i / n), i = 0..n: from 0 up to 1 - 2^(-14).
// Used by the weight-equivalence scans.
std::vector<double> equivalence_radii(int n);

// n radii uniform in u = log(1 - r), from r = 0 up to r = r_max (inclusive).
// Used by the sup engine's coarse pass. Requires n >= 2 and 0 < r_max < 1.
std::vector<double> clustered_radii(int n, double r_max);

} // namespace blochlab
