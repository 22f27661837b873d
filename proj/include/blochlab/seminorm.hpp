#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include "blochlab/parallel.hpp"
#include "blochlab/weights.hpp"

namespace blochlab {

// Grid and refinement budget for the sup engine. Defaults resolve the last
// 1e-12 sliver of the disk and finish a 200-term quotient series in seconds.
struct GridConfig {
    int n_radii = 512;
    int n_angles = 256;
    double r_max = 1.0 - 1e-12;
    int refine_rounds = 6;
    double refine_shrink = 0.25;
    double rel_tol = 1e-7;
    double divergence_cap = 1e12;

    void validate() const; // std::invalid_argument on nonsense values
};

// Result of a sup scan. `value` is always the weighted modulus at an actually
// evaluated point: a certified lower bound for the true supremum, never an
// extrapolation above seen data.
struct SupEstimate {
    double value = 0.0;
    Complex argmax{0.0, 0.0};
    bool boundary_dominated = false; // argmax radius within 10*(1-r_max) of r_max
    bool diverged = false;           // incumbent exceeded divergence_cap
    long evaluations = 0;
};

// Raised when the supplied evaluator throws; carries the offending point.
class EvaluatorError : public std::runtime_error {
public:
    EvaluatorError(Complex at, const std::string& what);
    Complex at() const { return at_; }

private:
    Complex at_;
};

using DerivFn = std::function<Complex(const Complex&)>;
using RadialFn = std::function<double(double)>;

// sup over the disk of w(z)*|df(z)|: coarse polar sweep on boundary-clustered
// radii, then refine_rounds of 17x17 re-gridding in a shrinking rectangle in
// (log-gap, angle) space around the incumbent. Deterministic for any thread
// count: rows are independent slots, merges are ordered, ties break toward
// the smaller radius then the smaller angle.
SupEstimate sup_weighted_deriv(const DerivFn& df, const Weight& w, const GridConfig& cfg,
                               const ThreadPool* pool = nullptr);

// 1-D fast path when the caller certifies |df(z)| = profile(|z|): radial scan
// plus golden-section refinement. Requires a radial weight.
SupEstimate sup_weighted_deriv_radial(const RadialFn& profile, const Weight& w,
                                      const GridConfig& cfg);

} // namespace blochlab
