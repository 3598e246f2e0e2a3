#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ickit/normal.hpp"

namespace ickit {

/// Cross-sectional vector of returns, one entry per stock.
using ReturnVector = std::vector<double>;

/// Names one reproducible random stream. The stream is a pure function of the
/// triple; distinct triples give independent streams.
struct SeededStream {
    std::uint64_t master_seed = 0;
    std::uint32_t cell_id = 0;
    std::uint32_t draw_id = 0;

    friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

/// Independent sub-streams of one SeededStream.
enum class Substream : std::uint32_t {
    predicted = 0,   // x
    residual = 1,    // z in y = rho x + sqrt(1 - rho^2) z
    auxiliary = 2,   // free for callers (e.g. time-series simulation)
};

struct CorrelatedPair {
    ReturnVector x;  // predicted
    ReturnVector y;  // actual
    double rho = 0.0;
    std::size_t n = 0;
};

/// Fills `out` with standard normals drawn from one sub-stream.
void fill_standard_normal(const SeededStream& stream, Substream which, std::span<double> out);

/// y_i = rho x_i + sqrt(1 - rho^2) z_i with x, z independent standard normals.
CorrelatedPair sample_correlated_pair(std::size_t n, double rho, const SeededStream& stream);

/// Allocation-free variant; x and y must both have size n.
void sample_correlated_pair_into(double rho, const SeededStream& stream, std::span<double> x,
                                 std::span<double> y);

/// Zero mean, unit population standard deviation. Rank order is preserved.
ReturnVector normalize(std::span<const double> raw);

double pearson(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of average ranks (ties share their mean rank).
double spearman(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based) with ties averaged.
std::vector<double> average_ranks(std::span<const double> values);

/// Mean y over the top fifth of stocks ranked by x minus mean y over the
/// bottom fifth. With k = floor(n/5), the bottom bucket holds ranks 1..k and
/// the top bucket ranks n-k+1..n; ties in x rank by position.
double quintile_spread(std::span<const double> x, std::span<const double> y);

/// Same statistic with caller-owned scratch (resized as needed).
double quintile_spread(std::span<const double> x, std::span<const double> y,
                       std::vector<double>& scratch);

} // namespace ickit
