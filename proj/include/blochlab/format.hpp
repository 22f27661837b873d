#pragma once

#include <cstdint>
#include <string>

namespace blochlab {

// Shortest locale-independent rendering at 17 significant digits ("%.17g").
// 17 digits round-trips any IEEE double, which is what makes the CSV/JSON
// outputs byte-reproducible across runs.
std::string fp17(double x);

std::string int_str(std::int64_t v);

inline const char* bool_str(bool b) { return b ? "true" : "false"; }

} // namespace blochlab
