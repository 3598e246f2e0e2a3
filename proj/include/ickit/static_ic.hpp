#pragma once

// Point-in-time IC analytics: recovery bias, the Fisher transformation and
// three ways to build the 95%-style interval for an estimated IC.
//
// Intervals describe the sampling distribution of the *estimated* IC given the
// true rho (not an interval for rho given data). Under the normal
// approximation the two readings coincide.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ickit/simulation.hpp"

namespace ickit {

/// Underlying ("true") IC of a model; |rho| < 1.
class TrueIC {
public:
    explicit TrueIC(double rho);
    double value() const noexcept { return rho_; }

private:
    double rho_;
};

/// An estimated or realized IC, within [-1, 1].
class ICEstimate {
public:
    explicit ICEstimate(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

enum class CiProcedure { simulation, fisher, normal_approx };

std::string_view procedure_name(CiProcedure p) noexcept;

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    CiProcedure procedure = CiProcedure::fisher;
};

/// (estimate - rho) / rho. Undefined, and rejected, at rho = 0.
double relative_bias(ICEstimate estimate, TrueIC truth);

/// Mean |relative bias| under the normal approximation:
/// sqrt(2) / (|rho| sqrt(pi (n - 3))).
double expected_recovery_bias(TrueIC truth, std::size_t n);

double fisher_transform(double r);
double fisher_inverse(double z) noexcept;

ConfidenceInterval ci_fisher(TrueIC truth, std::size_t n, double level = 0.95);

/// rho -/+ z / sqrt(n - 3), clamped to [-1, 1].
ConfidenceInterval ci_normal_approx(TrueIC truth, std::size_t n, double level = 0.95);

struct SimulatedCiOptions {
    std::size_t draws = 1000;
    std::uint64_t seed = kDefaultSeed;
    std::uint32_t cell_id = 0;
    unsigned threads = 0;
};

/// Empirical ((1-level)/2, (1+level)/2) quantiles of simulated Pearson estimates.
ConfidenceInterval ci_simulated(TrueIC truth, std::size_t n, double level,
                                const SimulatedCiOptions& options = {});

/// Linear-interpolation sample quantile (Hyndman-Fan type 7) of sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

struct BiasSurfaceCell {
    std::size_t n = 0;
    double rho = 0.0;
    double mean_recovery_bias_sim = 0.0;
    double expected_recovery_bias_theory = 0.0;

    /// (theory - simulated) / simulated.
    double relative_difference() const noexcept {
        return (expected_recovery_bias_theory - mean_recovery_bias_sim) / mean_recovery_bias_sim;
    }
};

/// Simulates the grid (Pearson only) and pairs each cell's mean recovery bias
/// with its theoretical value. Throws DomainError if any cell has rho = 0.
std::vector<BiasSurfaceCell> bias_surface(const SimulationGrid& grid, unsigned threads = 0);

/// Projection of an existing simulation; rho = 0 cells are skipped.
std::vector<BiasSurfaceCell> bias_surface(const GridSimulation& simulation);

} // namespace ickit
