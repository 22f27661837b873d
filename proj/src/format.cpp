#include "blochlab/format.hpp"

#include <cmath>
#include <cstdio>

namespace blochlab {

std::string fp17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    // snprintf with "%.17g" is locale-sensitive for the decimal point in
    // principle; the tools never call setlocale, so the C locale ('.') is in
    // effect. Outputs are therefore stable byte-for-byte.
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string int_str(std::int64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
}

} // namespace blochlab
