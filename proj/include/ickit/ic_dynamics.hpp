#pragma once

// Realized IC = rho0 + e_N + e_t. The size-driven part has sd 1/sqrt(N-3); the
// rest of the observed variability is attributed to the time-varying part.

#include <cstddef>
#include <optional>

#include "ickit/series.hpp"

namespace ickit {

struct TimeVaryingSplit {
    double std_et = 0.0;
    double time_varying_share = 0.0;  // std_et / std_total
};

struct DecompositionResult {
    double mean_ic = 0.0;
    double std_total = 0.0;
    double std_eN = 0.0;
    double std_et = 0.0;
    double time_varying_share = 0.0;
    std::optional<long> minimal_T;  // nullopt: mean IC <= 0, never significant
};

enum class PeriodRounding { nearest, ceiling };

double std_eN(std::size_t n);

/// Throws InfeasibleDecomposition when std_total^2 < 1/(n-3).
TimeVaryingSplit decompose_std(double std_total, std::size_t n);

/// Periods T for which a one-sided test of mean IC > 0 at `significance`
/// becomes significant: (z * std_ic / mean_ic)^2, rounded. nullopt if
/// mean_ic <= 0.
std::optional<long> minimal_T(double mean_ic, double std_ic, double significance = 0.05,
                              PeriodRounding rounding = PeriodRounding::nearest);

DecompositionResult decompose_summary(double mean_ic, double std_total, std::size_t n,
                                      double significance = 0.05,
                                      PeriodRounding rounding = PeriodRounding::nearest);

/// Uses the sample mean and n-1 sample sd of the series' ICs. The series must
/// carry its universe size and hold at least two observations.
DecompositionResult decompose_series(const RealizedICSeries& series, double significance = 0.05,
                                     PeriodRounding rounding = PeriodRounding::nearest);

} // namespace ickit
