#pragma once

// Monte Carlo over an (N, rho) grid. Each (cell, draw) pair samples one
// CorrelatedPair from SeededStream{master_seed, cell_id, draw_id} and records
// the estimated IC and the quintile spread. Results depend only on the grid,
// never on the thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ickit {

inline constexpr std::uint64_t kDefaultSeed = 20201001;

struct SimulationGrid {
    std::vector<std::size_t> universe_sizes;
    std::vector<double> true_ics;
    std::size_t draws = 1000;
    std::uint64_t master_seed = kDefaultSeed;

    std::size_t cell_count() const noexcept { return universe_sizes.size() * true_ics.size(); }

    /// Cells are numbered n-major: id = size_index * true_ics.size() + ic_index.
    std::uint32_t cell_id(std::size_t size_index, std::size_t ic_index) const noexcept {
        return static_cast<std::uint32_t>(size_index * true_ics.size() + ic_index);
    }
};

/// Universe sizes and true ICs of the reference design, 1000 draws.
SimulationGrid reference_grid();

/// reference_grid() with rho = 0 inserted (used for negative-spread prevalence).
SimulationGrid reference_grid_with_zero();

struct CellSimulation {
    std::size_t n = 0;
    double rho = 0.0;
    std::uint32_t cell_id = 0;
    std::vector<double> estimates;  // pearson per draw
    std::vector<double> spreads;    // quintile spread per draw (empty if not requested)
};

struct GridSimulation {
    SimulationGrid grid;
    std::vector<CellSimulation> cells;  // in cell_id order
};

struct SimulationOptions {
    unsigned threads = 0;
    bool quintile_spreads = true;
};

/// Validates and runs the grid. Throws DomainError for |rho| >= 1, n < 2
/// (n < 5 when spreads are requested) or zero draws.
GridSimulation simulate_grid(const SimulationGrid& grid, const SimulationOptions& options = {});

/// Pearson estimates for one cell; draws [0, draws) of SeededStream{seed, cell_id, .}.
std::vector<double> simulate_estimates(double rho, std::size_t n, std::size_t draws,
                                       std::uint64_t seed, std::uint32_t cell_id = 0,
                                       unsigned threads = 0);

} // namespace ickit
