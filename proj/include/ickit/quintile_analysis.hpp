#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ickit/simulation.hpp"

namespace ickit {

/// Expected top-minus-bottom quintile spread per unit of IC for bivariate
/// normal returns: phi(q80)/0.2 + phi(q20)/0.2, about 2.80.
double theoretical_spread_constant();

struct SpreadRatioCell {
    std::size_t n = 0;
    double rho = 0.0;
    double mean_ratio = 0.0;   // mean over draws of spread / rho
    double std_error = 0.0;    // standard error of mean_ratio
};

struct PrevalenceCell {
    std::size_t n = 0;
    double rho = 0.0;
    double fraction_negative = 0.0;  // draws with spread < 0 (zero counts as non-negative)
};

/// Throws DomainError if any grid IC is zero.
std::vector<SpreadRatioCell> spread_ratio_table(const SimulationGrid& grid, unsigned threads = 0);

/// Projection of an existing simulation; rho = 0 cells are skipped.
std::vector<SpreadRatioCell> spread_ratio_table(const GridSimulation& simulation);

std::vector<PrevalenceCell> negative_spread_prevalence(const SimulationGrid& grid,
                                                       unsigned threads = 0);

std::vector<PrevalenceCell> negative_spread_prevalence(const GridSimulation& simulation);

/// Smallest grid IC whose simulated negative-spread prevalence at universe
/// size n is <= target_prevalence. nullopt when no grid point qualifies.
std::optional<double> acceptable_ic_threshold(std::size_t n, double target_prevalence,
                                              std::span<const double> ic_grid,
                                              std::size_t draws, std::uint64_t seed = kDefaultSeed,
                                              unsigned threads = 0);

/// Same search over precomputed prevalence cells (cells with other n are ignored).
std::optional<double> acceptable_ic_threshold(std::size_t n, double target_prevalence,
                                              std::span<const PrevalenceCell> cells);

} // namespace ickit
