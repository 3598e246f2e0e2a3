#include "ickit/quintile_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ickit/error.hpp"
#include "ickit/normal.hpp"

namespace ickit {

double theoretical_spread_constant() {
    const double upper = normal_pdf(normal_inverse_cdf(0.8)) / (1.0 - 0.8);
    const double lower = -normal_pdf(normal_inverse_cdf(0.2)) / 0.2;
    return upper - lower;
}

std::vector<SpreadRatioCell> spread_ratio_table(const GridSimulation& simulation) {
    std::vector<SpreadRatioCell> out;
    for (const auto& cell : simulation.cells) {
        if (cell.rho == 0.0) continue;
        if (cell.spreads.empty()) throw DomainError("spread_ratio_table: simulation lacks spreads");
        const double draws = static_cast<double>(cell.spreads.size());
        double mean = 0.0;
        for (double s : cell.spreads) mean += s / cell.rho;
        mean /= draws;
        double ss = 0.0;
        for (double s : cell.spreads) ss += (s / cell.rho - mean) * (s / cell.rho - mean);
        const double se = draws > 1 ? std::sqrt(ss / (draws - 1) / draws) : 0.0;
        out.push_back({cell.n, cell.rho, mean, se});
    }
    return out;
}

std::vector<SpreadRatioCell> spread_ratio_table(const SimulationGrid& grid, unsigned threads) {
    for (double rho : grid.true_ics)
        if (rho == 0.0) throw DomainError("spread_ratio_table: grid contains rho = 0");
    return spread_ratio_table(simulate_grid(grid, {threads, true}));
}

std::vector<PrevalenceCell> negative_spread_prevalence(const GridSimulation& simulation) {
    std::vector<PrevalenceCell> out;
    out.reserve(simulation.cells.size());
    for (const auto& cell : simulation.cells) {
        if (cell.spreads.empty()) throw DomainError("negative_spread_prevalence: simulation lacks spreads");
        const auto negative = std::count_if(cell.spreads.begin(), cell.spreads.end(),
                                            [](double s) { return s < 0.0; });
        out.push_back({cell.n, cell.rho,
                       static_cast<double>(negative) / static_cast<double>(cell.spreads.size())});
    }
    return out;
}

std::vector<PrevalenceCell> negative_spread_prevalence(const SimulationGrid& grid, unsigned threads) {
    return negative_spread_prevalence(simulate_grid(grid, {threads, true}));
}

std::optional<double> acceptable_ic_threshold(std::size_t n, double target_prevalence,
                                              std::span<const PrevalenceCell> cells) {
    if (!(target_prevalence > 0.0 && target_prevalence < 1.0))
        throw DomainError("acceptable_ic_threshold: target prevalence must lie in (0, 1)");
    std::optional<double> best;
    for (const auto& c : cells) {
        if (c.n != n || c.fraction_negative > target_prevalence) continue;
        if (!best || c.rho < *best) best = c.rho;
    }
    return best;
}

std::optional<double> acceptable_ic_threshold(std::size_t n, double target_prevalence,
                                              std::span<const double> ic_grid, std::size_t draws,
                                              std::uint64_t seed, unsigned threads) {
    if (n < 5) throw DomainError("acceptable_ic_threshold: n must be >= 5");
    SimulationGrid grid{{n}, {ic_grid.begin(), ic_grid.end()}, draws, seed};
    const auto cells = negative_spread_prevalence(grid, threads);
    return acceptable_ic_threshold(n, target_prevalence, cells);
}

} // namespace ickit
