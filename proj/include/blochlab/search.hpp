#pragma once

#include <functional>

namespace blochlab {

struct ScalarMax {
    double x = 0.0;     // best evaluated abscissa
    double value = 0.0; // f(x); a certified lower bound for the true sup
    long evaluations = 0;
};

// Golden-section maximization of f on [lo, hi]. Only continuity is assumed:
// the result is always an actually-evaluated point, never an extrapolation,
// so `value` underestimates rather than overestimates the true maximum.
// Stops when the bracket width drops below xtol (absolute) or after maxit
// shrink steps. Endpoints are evaluated too.
ScalarMax golden_max(const std::function<double(double)>& f, double lo, double hi,
                     double xtol, int maxit = 200);

} // namespace blochlab
