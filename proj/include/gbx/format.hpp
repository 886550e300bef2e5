#pragma once

#include <cstdio>
#include <string>

namespace gbx {

/// Number of significant digits used for every printed real.
inline constexpr int output_digits = 12;

inline std::string fmt_real(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", output_digits, x);
    return buf;
}

/// Rounds x to the printed precision so serialized output is insensitive to
/// noise in the last bits.
inline double round_printed(double x)
{
    return std::stod(fmt_real(x));
}

} // namespace gbx
