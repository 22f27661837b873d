#pragma once

namespace blochlab {

// Constants derived from the logarithmic weight w(t) = (1-t)*log(3/(1-t)).
// All of them trace back to L = 1 - 1/log(3), the height of the annulus
// partition used throughout: r_j = 1 - L/(j+L).
struct Constants {
    double L;           // 1 - 1/log(3)
    double h_lower;     // L / (2*e^L), uniform floor of the normalized profiles
    double band_ratio;  // (2L + 6*e^(L-1)) / L, essential-norm band upper/lower
    double ratio_cap;   // 3 / (2e), threshold for the envelope-ratio cutoff
    double log3;        // log(3), kept to avoid re-deriving it at call sites
};

// Function-local static: safe under any static-init order, computed once.
const Constants& constants();

} // namespace blochlab
