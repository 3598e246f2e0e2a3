#include "ickit/ic_dynamics.hpp"

#include <cmath>
#include <string>

#include "ickit/error.hpp"
#include "ickit/normal.hpp"

namespace ickit {

double std_eN(std::size_t n) {
    if (n <= 3) throw DomainError("std_eN: universe size must exceed 3");
    return 1.0 / std::sqrt(static_cast<double>(n - 3));
}

TimeVaryingSplit decompose_std(double std_total, std::size_t n) {
    if (!(std_total >= 0.0)) throw DomainError("decompose_std: std_total must be >= 0");
    const double static_sd = std_eN(n);
    const double floor_var = static_sd * static_sd;
    const double residual = std_total * std_total - floor_var;
    // The boundary case std_total == std_eN(n) can land a few ulps negative.
    if (residual < -1e-15 * floor_var)
        throw InfeasibleDecomposition("decomposition infeasible: total sd " + std::to_string(std_total) +
                                      " is below the static floor " + std::to_string(static_sd));
    const double std_et = residual > 0.0 ? std::sqrt(residual) : 0.0;
    return {std_et, std_total > 0.0 ? std_et / std_total : 0.0};
}

std::optional<long> minimal_T(double mean_ic, double std_ic, double significance,
                              PeriodRounding rounding) {
    if (!(std_ic > 0.0)) throw DomainError("minimal_T: std_ic must be positive");
    if (!(significance > 0.0 && significance < 0.5))
        throw DomainError("minimal_T: significance must lie in (0, 0.5)");
    if (!(mean_ic > 0.0)) return std::nullopt;
    const double ratio = normal_inverse_cdf(1.0 - significance) * std_ic / mean_ic;
    const double periods = ratio * ratio;
    const double rounded = rounding == PeriodRounding::nearest ? std::round(periods) : std::ceil(periods);
    return std::max(1L, static_cast<long>(rounded));
}

DecompositionResult decompose_summary(double mean_ic, double std_total, std::size_t n,
                                      double significance, PeriodRounding rounding) {
    const auto split = decompose_std(std_total, n);
    DecompositionResult r;
    r.mean_ic = mean_ic;
    r.std_total = std_total;
    r.std_eN = std_eN(n);
    r.std_et = split.std_et;
    r.time_varying_share = split.time_varying_share;
    if (std_total > 0.0) r.minimal_T = minimal_T(mean_ic, std_total, significance, rounding);
    return r;
}

DecompositionResult decompose_series(const RealizedICSeries& series, double significance,
                                     PeriodRounding rounding) {
    if (series.size() < 2) throw DomainError("decompose_series: need at least 2 observations");
    if (!series.universe_size()) throw DomainError("decompose_series: series has no universe size");
    const auto values = series.values();
    return decompose_summary(sample_mean(values), sample_sd(values), *series.universe_size(),
                             significance, rounding);
}

} // namespace ickit
