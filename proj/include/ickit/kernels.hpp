#pragma once

// Data-parallel inner loops behind the sampler and the correlation and
// quintile statistics. Each kernel has a scalar reference implementation and
// optional SIMD variants. Variants are bit-identical to the reference: the
// scalar code mirrors the 8-lane accumulation order of the vector code, and
// the build disables FMA contraction. Dispatch therefore never changes results.

#include <cstddef>
#include <span>
#include <string_view>

#include "ickit/philox.hpp"

namespace ickit::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct CenteredMoments {
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
};

/// Sums of y over the stocks with x <= bottom_cut and x >= top_cut.
struct TailSums {
    double bottom_sum = 0.0;
    std::size_t bottom_count = 0;
    double top_sum = 0.0;
    std::size_t top_count = 0;
};

struct KernelTable {
    Isa isa;

    /// Writes out.size() uniforms in (0, 1). Block b = base[0] + i yields
    /// out[2i] from words (0, 1) and out[2i + 1] from words (2, 3).
    void (*fill_uniform)(PhiloxKey key, PhiloxCounter base, std::span<double> out);

    /// In-place uniform -> standard normal via the inverse CDF.
    void (*uniform_to_normal)(std::span<double> values);

    /// noise[i] <- rho * x[i] + resid_scale * noise[i]
    void (*mix_correlated)(double rho, double resid_scale, std::span<const double> x,
                           std::span<double> noise);

    double (*sum)(std::span<const double> values);

    double (*centered_sumsq)(std::span<const double> values, double mean);

    CenteredMoments (*centered_moments)(std::span<const double> x, std::span<const double> y,
                                        double mean_x, double mean_y);

    /// values[i] <- (values[i] - mean) / sd
    void (*standardize)(std::span<double> values, double mean, double sd);

    TailSums (*tail_sums)(std::span<const double> x, std::span<const double> y, double bottom_cut,
                          double top_cut);
};

/// The table used by every library routine. Chosen once from CPU features;
/// the ICKIT_ISA environment variable (scalar|avx2) overrides the choice.
const KernelTable& active() noexcept;

const KernelTable& scalar() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;

bool isa_supported(Isa isa) noexcept;

/// Switches the active table. Not synchronized with in-flight kernel calls;
/// intended for tests and benchmarks. Throws DomainError if unsupported.
void select_isa(Isa isa);

} // namespace ickit::kernels
