#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace qpmspdc {

/// Shortest-form rendering with 9 significant digits, used for all CSV output.
inline std::string format_number(double value) {
    if (std::isnan(value)) return "NA";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

} // namespace qpmspdc
