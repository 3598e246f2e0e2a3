#include "ickit/core_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ickit/error.hpp"
#include "ickit/kernels.hpp"

namespace ickit {

namespace {

PhiloxKey key_for(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

void require_pair(std::span<const double> x, std::span<const double> y, const char* op) {
    if (x.size() != y.size())
        throw DomainError(std::string(op) + ": vectors differ in length");
    if (x.size() < 2) throw DomainError(std::string(op) + ": need at least 2 observations");
}

} // namespace

void fill_standard_normal(const SeededStream& stream, Substream which, std::span<double> out) {
    const auto& k = kernels::active();
    const PhiloxCounter base{0u, stream.draw_id, stream.cell_id, static_cast<std::uint32_t>(which)};
    k.fill_uniform(key_for(stream.master_seed), base, out);
    k.uniform_to_normal(out);
}

void sample_correlated_pair_into(double rho, const SeededStream& stream, std::span<double> x,
                                 std::span<double> y) {
    if (!(std::fabs(rho) < 1.0)) throw DomainError("sample_correlated_pair: |rho| must be < 1");
    if (x.size() != y.size()) throw DomainError("sample_correlated_pair: x and y differ in length");
    if (x.size() < 2) throw DomainError("sample_correlated_pair: n must be >= 2");
    fill_standard_normal(stream, Substream::predicted, x);
    fill_standard_normal(stream, Substream::residual, y);
    const double resid_scale = std::sqrt((1.0 - rho) * (1.0 + rho));
    kernels::active().mix_correlated(rho, resid_scale, x, y);
}

CorrelatedPair sample_correlated_pair(std::size_t n, double rho, const SeededStream& stream) {
    CorrelatedPair pair{ReturnVector(n), ReturnVector(n), rho, n};
    sample_correlated_pair_into(rho, stream, pair.x, pair.y);
    return pair;
}

ReturnVector normalize(std::span<const double> raw) {
    if (raw.size() < 2) throw DomainError("normalize: need at least 2 observations");
    const auto& k = kernels::active();
    const double n = static_cast<double>(raw.size());
    const double mean = k.sum(raw) / n;
    const double sd = std::sqrt(k.centered_sumsq(raw, mean) / n);
    if (!(sd > 0.0)) throw DomainError("normalize: degenerate (zero-variance) input");
    ReturnVector out(raw.begin(), raw.end());
    k.standardize(out, mean, sd);
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y, "pearson");
    const auto& k = kernels::active();
    const double n = static_cast<double>(x.size());
    const auto m = k.centered_moments(x, y, k.sum(x) / n, k.sum(y) / n);
    if (!(m.sxx > 0.0) || !(m.syy > 0.0)) throw DomainError("pearson: degenerate input vector");
    const double r = m.sxy / std::sqrt(m.sxx * m.syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
        i = j;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    require_pair(x, y, "spearman");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double quintile_spread(std::span<const double> x, std::span<const double> y,
                       std::vector<double>& scratch) {
    if (x.size() != y.size()) throw DomainError("quintile_spread: vectors differ in length");
    const std::size_t n = x.size();
    if (n < 5) throw DomainError("quintile_spread: need at least 5 stocks");
    const std::size_t k = n / 5;

    scratch.assign(x.begin(), x.end());
    auto first = scratch.begin();
    std::nth_element(first, first + static_cast<std::ptrdiff_t>(k - 1), scratch.end());
    const double bottom_cut = scratch[k - 1];
    std::nth_element(first + static_cast<std::ptrdiff_t>(k), first + static_cast<std::ptrdiff_t>(n - k),
                     scratch.end());
    const double top_cut = scratch[n - k];

    const double kd = static_cast<double>(k);
    const auto t = kernels::active().tail_sums(x, y, bottom_cut, top_cut);
    if (t.bottom_count == k && t.top_count == k) return t.top_sum / kd - t.bottom_sum / kd;

    // Ties straddle a bucket boundary: rank by (x, position).
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    double bottom = 0.0, top = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        bottom += y[order[i]];
        top += y[order[n - k + i]];
    }
    return top / kd - bottom / kd;
}

double quintile_spread(std::span<const double> x, std::span<const double> y) {
    std::vector<double> scratch;
    return quintile_spread(x, y, scratch);
}

} // namespace ickit
