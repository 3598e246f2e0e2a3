#include "ickit/simulation.hpp"

#include <cmath>
#include <string>

#include "ickit/core_stats.hpp"
#include "ickit/error.hpp"
#include "ickit/parallel.hpp"

namespace ickit {

namespace {

constexpr std::size_t kDrawsPerTask = 64;

struct Workspace {
    std::vector<double> x, y, scratch;

    void resize(std::size_t n) {
        x.resize(n);
        y.resize(n);
    }
};

void validate(const SimulationGrid& grid, const SimulationOptions& options) {
    if (grid.draws == 0) throw DomainError("simulation grid: draws must be positive");
    if (grid.cell_count() == 0) throw DomainError("simulation grid: empty grid");
    if (grid.cell_count() > 0xFFFFFFFFull || grid.draws > 0xFFFFFFFFull)
        throw DomainError("simulation grid: too many cells or draws");
    const std::size_t min_n = options.quintile_spreads ? 5 : 2;
    for (std::size_t n : grid.universe_sizes)
        if (n < min_n)
            throw DomainError("simulation grid: universe size " + std::to_string(n) +
                              " below minimum " + std::to_string(min_n));
    for (double rho : grid.true_ics)
        if (!(std::fabs(rho) < 1.0)) throw DomainError("simulation grid: |rho| must be < 1");
}

} // namespace

SimulationGrid reference_grid() {
    return SimulationGrid{
        {50, 100, 250, 500, 1000, 3000, 5000},
        {-0.1, -0.05, -0.04, -0.03, -0.02, -0.01, 0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08,
         0.09, 0.1, 0.2, 0.3},
        1000,
        kDefaultSeed,
    };
}

SimulationGrid reference_grid_with_zero() {
    SimulationGrid g = reference_grid();
    g.true_ics.insert(g.true_ics.begin() + 6, 0.0);
    return g;
}

GridSimulation simulate_grid(const SimulationGrid& grid, const SimulationOptions& options) {
    validate(grid, options);
    GridSimulation out{grid, {}};
    out.cells.reserve(grid.cell_count());
    for (std::size_t si = 0; si < grid.universe_sizes.size(); ++si) {
        for (std::size_t ri = 0; ri < grid.true_ics.size(); ++ri) {
            CellSimulation cell;
            cell.n = grid.universe_sizes[si];
            cell.rho = grid.true_ics[ri];
            cell.cell_id = grid.cell_id(si, ri);
            cell.estimates.resize(grid.draws);
            if (options.quintile_spreads) cell.spreads.resize(grid.draws);
            out.cells.push_back(std::move(cell));
        }
    }

    const std::size_t chunks = (grid.draws + kDrawsPerTask - 1) / kDrawsPerTask;
    const std::size_t tasks = out.cells.size() * chunks;
    parallel_for(tasks, options.threads, [&](std::size_t task) {
        thread_local Workspace ws;
        CellSimulation& cell = out.cells[task / chunks];
        const std::size_t first = (task % chunks) * kDrawsPerTask;
        const std::size_t last = std::min(grid.draws, first + kDrawsPerTask);
        ws.resize(cell.n);
        for (std::size_t d = first; d < last; ++d) {
            const SeededStream stream{grid.master_seed, cell.cell_id, static_cast<std::uint32_t>(d)};
            sample_correlated_pair_into(cell.rho, stream, ws.x, ws.y);
            cell.estimates[d] = pearson(ws.x, ws.y);
            if (options.quintile_spreads) cell.spreads[d] = quintile_spread(ws.x, ws.y, ws.scratch);
        }
    });
    return out;
}

std::vector<double> simulate_estimates(double rho, std::size_t n, std::size_t draws,
                                       std::uint64_t seed, std::uint32_t cell_id, unsigned threads) {
    if (draws == 0 || draws > 0xFFFFFFFFull) throw DomainError("simulate_estimates: bad draw count");
    if (n < 2) throw DomainError("simulate_estimates: n must be >= 2");
    if (!(std::fabs(rho) < 1.0)) throw DomainError("simulate_estimates: |rho| must be < 1");
    std::vector<double> estimates(draws);
    const std::size_t chunks = (draws + kDrawsPerTask - 1) / kDrawsPerTask;
    parallel_for(chunks, threads, [&](std::size_t chunk) {
        thread_local Workspace ws;
        ws.resize(n);
        const std::size_t last = std::min(draws, (chunk + 1) * kDrawsPerTask);
        for (std::size_t d = chunk * kDrawsPerTask; d < last; ++d) {
            sample_correlated_pair_into(rho, {seed, cell_id, static_cast<std::uint32_t>(d)}, ws.x, ws.y);
            estimates[d] = pearson(ws.x, ws.y);
        }
    });
    return estimates;
}

} // namespace ickit
