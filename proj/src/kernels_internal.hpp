#pragma once

#include "ickit/kernels.hpp"

namespace ickit::kernels::detail {

// Accumulator lanes shared by every reduction kernel.
inline constexpr std::size_t kLanes = 8;

/// Wichura's AS241 (PPND16). Out-of-line so SIMD translation units reuse the
/// exact same tail code for lanes outside the central region.
double ppnd16(double p) noexcept;

/// Tail branch of ppnd16 for |p - 0.5| > 0.425.
double ppnd16_tail(double p) noexcept;

inline constexpr double kCentralSplit = 0.425;
inline constexpr double kCentralConst = 0.180625;

inline constexpr double kA[8] = {
    3.3871328727963666080e0,  1.3314166789178437745e+2, 1.9715909503065514427e+3,
    1.3731693765509461125e+4, 4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
inline constexpr double kB[8] = {
    1.0,                      4.2313330701600911252e+1, 6.8718700749205790830e+2,
    5.3941960214247511077e+3, 2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};

extern const KernelTable kScalarTable;
#if defined(ICKIT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

} // namespace ickit::kernels::detail
