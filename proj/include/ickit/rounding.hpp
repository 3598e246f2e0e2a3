#pragma once

#include <cmath>

namespace ickit {

/// v * 10^decimals rounded half away from zero, computed in extended
/// precision so the scaling step does not itself round.
inline long long round_units(double v, int decimals) noexcept {
    long double scaled = static_cast<long double>(v);
    for (int i = 0; i < decimals; ++i) scaled *= 10.0L;
    return std::llround(scaled);
}

inline double round_half_away(double v, int decimals) noexcept {
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i) scale *= 10.0;
    return static_cast<double>(round_units(v, decimals)) / scale;
}

} // namespace ickit
