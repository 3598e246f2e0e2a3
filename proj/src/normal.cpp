#include "ickit/normal.hpp"

#include <cmath>
#include <numbers>

#include "ickit/error.hpp"
#include "kernels_internal.hpp"

namespace ickit {

double normal_pdf(double z) noexcept {
    return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_inverse_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_inverse_cdf: p must lie in (0, 1)");
    return kernels::detail::ppnd16(p);
}

} // namespace ickit
