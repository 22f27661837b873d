#include "blochlab/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace blochlab {

std::vector<double> equivalence_radii(int n) {
    if (n < 1) throw std::invalid_argument("equivalence_radii: n must be >= 1");
    std::vector<double> r(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        // exp2 keeps r_0 == 0 and r_n == 1 - 2^-14 exact.
        r[static_cast<size_t>(i)] = 1.0 - std::exp2(-14.0 * i / n);
    }
    return r;
}

std::vector<double> clustered_radii(int n, double r_max) {
    if (n < 2) throw std::invalid_argument("clustered_radii: n must be >= 2");
    if (!(r_max > 0.0 && r_max < 1.0))
        throw std::invalid_argument("clustered_radii: r_max must lie in (0,1)");
    const double u_min = std::log1p(-r_max); // log(1 - r_max), very negative
    std::vector<double> r(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double u = u_min * i / (n - 1); // 0 at i=0, u_min at i=n-1
        r[static_cast<size_t>(i)] = -std::expm1(u); // 1 - e^u, exact 0 at u=0
    }
    r[static_cast<size_t>(n) - 1] = r_max; // pin the endpoint exactly
    return r;
}

} // namespace blochlab
