#include "blochlab/search.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace blochlab {

ScalarMax golden_max(const std::function<double(double)>& f, double lo, double hi,
                     double xtol, int maxit) {
    if (!(lo <= hi)) throw std::invalid_argument("golden_max: lo > hi");
    ScalarMax best;
    auto eval = [&](double x) {
        const double v = f(x);
        ++best.evaluations;
        if (best.evaluations == 1 || v > best.value) {
            best.value = v;
            best.x = x;
        }
        return v;
    };
    eval(lo);
    if (hi > lo) eval(hi);

    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
    static const double invphi2 = (3.0 - std::sqrt(5.0)) / 2.0; // 0.382...

    double a = lo, b = hi;
    double h = b - a;
    if (h <= xtol) return best;

    double c = a + invphi2 * h;
    double d = a + invphi * h;
    double fc = eval(c);
    double fd = eval(d);
    for (int it = 0; it < maxit && h > xtol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = a + invphi2 * h;
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + invphi * h;
            fd = eval(d);
        }
    }
    return best;
}

} // namespace blochlab
