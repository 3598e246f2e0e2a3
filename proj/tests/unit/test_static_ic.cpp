#include <doctest.h>

#include <cmath>
#include <vector>

#include "ickit/error.hpp"
#include "ickit/rounding.hpp"
#include "ickit/simulation.hpp"
#include "ickit/static_ic.hpp"
#include "printed_tables.hpp"

using namespace ickit;

TEST_CASE("strong types reject out-of-range values") {
    CHECK_THROWS_AS(TrueIC(1.0), DomainError);
    CHECK_THROWS_AS(TrueIC(-1.5), DomainError);
    CHECK_NOTHROW(TrueIC(0.0));
    CHECK_THROWS_AS(ICEstimate(1.01), DomainError);
    CHECK_NOTHROW(ICEstimate(-1.0));
}

TEST_CASE("fisher transform") {
    CHECK(fisher_transform(0.5) == doctest::Approx(0.5493061443340548).epsilon(1e-15));
    CHECK(fisher_inverse(fisher_transform(0.37)) == doctest::Approx(0.37).epsilon(1e-15));
    CHECK_THROWS_AS(fisher_transform(1.0), DomainError);
}

TEST_CASE("analytic intervals reproduce the printed table at 3 decimals") {
    for (const auto& row : printed::kTable2) {
        CAPTURE(row.rho);
        CAPTURE(row.n);
        const auto f = ci_fisher(TrueIC(row.rho), row.n);
        const auto a = ci_normal_approx(TrueIC(row.rho), row.n);
        CHECK(round_units(f.lower, 3) == round_units(row.fisher_lo, 3));
        CHECK(round_units(f.upper, 3) == round_units(row.fisher_hi, 3));
        CHECK(round_units(a.lower, 3) == round_units(row.normal_lo, 3));
        CHECK(round_units(a.upper, 3) == round_units(row.normal_hi, 3));
        CHECK(f.procedure == CiProcedure::fisher);
        CHECK(a.procedure == CiProcedure::normal_approx);
    }
}

TEST_CASE("fisher interval at rho = 0.05, n = 500") {
    const auto ci = ci_fisher(TrueIC(0.05), 500);
    CHECK(ci.lower == doctest::Approx(-0.03777).epsilon(1e-3));
    CHECK(ci.upper == doctest::Approx(0.13701).epsilon(1e-3));
    CHECK(ci.level == 0.95);
}

TEST_CASE("interval validation") {
    CHECK_THROWS_AS(ci_fisher(TrueIC(0.1), 3), DomainError);
    CHECK_THROWS_AS(ci_fisher(TrueIC(0.1), 100, 1.0), DomainError);
    CHECK_THROWS_AS(ci_simulated(TrueIC(0.1), 100, 0.95, {.draws = 50}), DomainError);
    const auto wide = ci_normal_approx(TrueIC(0.95), 5);
    CHECK(wide.upper <= 1.0);
}

TEST_CASE("expected recovery bias") {
    CHECK(expected_recovery_bias(TrueIC(0.05), 500) == doctest::Approx(0.715800278096343).epsilon(1e-13));
    CHECK_THROWS_AS(expected_recovery_bias(TrueIC(0.0), 500), DomainError);
    CHECK(relative_bias(ICEstimate(0.06), TrueIC(0.05)) == doctest::Approx(0.2));
    CHECK_THROWS_AS(relative_bias(ICEstimate(0.06), TrueIC(0.0)), DomainError);
}

TEST_CASE("type-7 quantile") {
    const std::vector<double> s{1, 2, 3, 4};
    CHECK(sorted_quantile(s, 0.0) == 1.0);
    CHECK(sorted_quantile(s, 1.0) == 4.0);
    CHECK(sorted_quantile(s, 0.5) == 2.5);
    CHECK(sorted_quantile(s, 0.25) == doctest::Approx(1.75));
}

TEST_CASE("simulated interval is deterministic and close to the analytic one") {
    SimulatedCiOptions opt{.draws = 4000, .seed = 7, .cell_id = 0, .threads = 2};
    const auto a = ci_simulated(TrueIC(0.05), 500, 0.95, opt);
    const auto b = ci_simulated(TrueIC(0.05), 500, 0.95, opt);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    const auto f = ci_fisher(TrueIC(0.05), 500);
    CHECK(std::fabs(a.lower - f.lower) < 0.01);
    CHECK(std::fabs(a.upper - f.upper) < 0.01);
}

TEST_CASE("fisher interval covers simulated estimates at the nominal rate") {
    const auto est = simulate_estimates(0.1, 200, 4000, 31, 0, 0);
    const auto ci = ci_fisher(TrueIC(0.1), 200);
    std::size_t inside = 0;
    for (double r : est) inside += (r >= ci.lower && r <= ci.upper);
    CHECK(static_cast<double>(inside) / 4000.0 == doctest::Approx(0.95).epsilon(0.02 / 0.95));
}

TEST_CASE("bias surface") {
    SimulationGrid g{{50, 500}, {0.05, 0.3}, 2000, 3};
    const auto cells = bias_surface(g, 1);
    REQUIRE(cells.size() == 4);
    for (const auto& c : cells) {
        CHECK(c.expected_recovery_bias_theory ==
              doctest::Approx(expected_recovery_bias(TrueIC(c.rho), c.n)));
        CHECK(c.relative_difference() > -0.1);
        CHECK(c.relative_difference() < 0.2);
    }
    SimulationGrid z{{50}, {0.0, 0.1}, 100, 3};
    CHECK_THROWS_AS(bias_surface(z, 1), DomainError);
}
