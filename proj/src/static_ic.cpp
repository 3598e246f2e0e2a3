#include "ickit/static_ic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ickit/error.hpp"
#include "ickit/normal.hpp"

namespace ickit {

namespace {

void require_n(std::size_t n, const char* op) {
    if (n <= 3) throw DomainError(std::string(op) + ": universe size must exceed 3");
}

double two_sided_z(double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    return normal_inverse_cdf(0.5 + 0.5 * level);
}

} // namespace

TrueIC::TrueIC(double rho) : rho_(rho) {
    if (!(std::fabs(rho) < 1.0)) throw DomainError("true IC must satisfy |rho| < 1");
}

ICEstimate::ICEstimate(double value) : value_(value) {
    if (!(value >= -1.0 && value <= 1.0)) throw DomainError("IC estimate must lie in [-1, 1]");
}

std::string_view procedure_name(CiProcedure p) noexcept {
    switch (p) {
    case CiProcedure::simulation: return "simulation";
    case CiProcedure::fisher: return "fisher";
    case CiProcedure::normal_approx: return "normal_approx";
    }
    return "unknown";
}

double relative_bias(ICEstimate estimate, TrueIC truth) {
    if (truth.value() == 0.0) throw DomainError("relative bias is not defined when rho = 0");
    return (estimate.value() - truth.value()) / truth.value();
}

double expected_recovery_bias(TrueIC truth, std::size_t n) {
    require_n(n, "expected_recovery_bias");
    if (truth.value() == 0.0) throw DomainError("recovery bias is not defined when rho = 0");
    const double dof = static_cast<double>(n - 3);
    return std::numbers::sqrt2 / (std::fabs(truth.value()) * std::sqrt(std::numbers::pi * dof));
}

double fisher_transform(double r) {
    if (!(std::fabs(r) < 1.0)) throw DomainError("fisher_transform: |r| must be < 1");
    return std::atanh(r);
}

double fisher_inverse(double z) noexcept { return std::tanh(z); }

ConfidenceInterval ci_fisher(TrueIC truth, std::size_t n, double level) {
    require_n(n, "ci_fisher");
    const double half = two_sided_z(level) / std::sqrt(static_cast<double>(n - 3));
    const double center = fisher_transform(truth.value());
    return {fisher_inverse(center - half), fisher_inverse(center + half), level, CiProcedure::fisher};
}

ConfidenceInterval ci_normal_approx(TrueIC truth, std::size_t n, double level) {
    require_n(n, "ci_normal_approx");
    const double half = two_sided_z(level) / std::sqrt(static_cast<double>(n - 3));
    return {std::max(-1.0, truth.value() - half), std::min(1.0, truth.value() + half), level,
            CiProcedure::normal_approx};
}

double sorted_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DomainError("sorted_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sorted_quantile: p must lie in [0, 1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ConfidenceInterval ci_simulated(TrueIC truth, std::size_t n, double level,
                                const SimulatedCiOptions& options) {
    if (options.draws < 100) throw DomainError("ci_simulated: need at least 100 draws");
    two_sided_z(level);
    auto estimates = simulate_estimates(truth.value(), n, options.draws, options.seed,
                                        options.cell_id, options.threads);
    std::sort(estimates.begin(), estimates.end());
    const double tail = 0.5 * (1.0 - level);
    return {sorted_quantile(estimates, tail), sorted_quantile(estimates, 1.0 - tail), level,
            CiProcedure::simulation};
}

std::vector<BiasSurfaceCell> bias_surface(const GridSimulation& simulation) {
    std::vector<BiasSurfaceCell> out;
    for (const auto& cell : simulation.cells) {
        if (cell.rho == 0.0) continue;
        double total = 0.0;
        for (double r : cell.estimates) total += std::fabs((r - cell.rho) / cell.rho);
        const TrueIC truth(cell.rho);
        out.push_back({cell.n, cell.rho, total / static_cast<double>(cell.estimates.size()),
                       expected_recovery_bias(truth, cell.n)});
    }
    return out;
}

std::vector<BiasSurfaceCell> bias_surface(const SimulationGrid& grid, unsigned threads) {
    for (double rho : grid.true_ics)
        if (rho == 0.0) throw DomainError("bias_surface: grid contains rho = 0 (bias undefined)");
    for (std::size_t n : grid.universe_sizes) require_n(n, "bias_surface");
    return bias_surface(simulate_grid(grid, {threads, false}));
}

} // namespace ickit
