#include "blochlab/constants.hpp"

#include <cmath>

namespace blochlab {

const Constants& constants() {
    static const Constants c = [] {
        Constants k;
        k.log3 = std::log(3.0);
        k.L = 1.0 - 1.0 / k.log3;
        k.h_lower = k.L / (2.0 * std::exp(k.L));
        k.band_ratio = (2.0 * k.L + 6.0 * std::exp(k.L - 1.0)) / k.L;
        k.ratio_cap = 3.0 / (2.0 * std::exp(1.0));
        return k;
    }();
    return c;
}

} // namespace blochlab
