#pragma once

namespace ickit {

double normal_pdf(double z) noexcept;

double normal_cdf(double z) noexcept;

/// Standard normal quantile (AS241). Throws DomainError unless 0 < p < 1.
double normal_inverse_cdf(double p);

} // namespace ickit
