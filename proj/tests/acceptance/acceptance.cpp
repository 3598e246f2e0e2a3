// Acceptance run: one PASS/FAIL line per criterion.
//
//   ickit_acceptance [--expect-red=4,5] [--bias-draws=N] [--report=PATH]
//
// Exit 0 when the set of failing criteria equals the --expect-red set.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "ickit/core_stats.hpp"
#include "ickit/csv_io.hpp"
#include "ickit/ic_dynamics.hpp"
#include "ickit/monitoring.hpp"
#include "ickit/normal.hpp"
#include "ickit/quintile_analysis.hpp"
#include "ickit/rounding.hpp"
#include "ickit/static_ic.hpp"
#include "printed_tables.hpp"

using namespace ickit;

namespace {

constexpr std::size_t kDraws = 10000;

struct Report {
    std::set<int> red;
    std::ostringstream text;

    void line(int id, bool pass, const std::string& what) {
        if (!pass) red.insert(id);
        const auto s = fmt::format("[{}] {:>2}. {}\n", pass ? "PASS" : "FAIL", id, what);
        std::cout << s << std::flush;
        text << s;
    }
    void detail(const std::string& what) {
        const auto s = "         " + what + "\n";
        std::cout << s << std::flush;
        text << s;
    }
};

std::size_t ic_index(std::span<const double> ics, double rho) {
    for (std::size_t i = 0; i < ics.size(); ++i)
        if (std::fabs(ics[i] - rho) < 1e-12) return i;
    return ics.size();
}

void criterion_1(Report& r) {
    int exact = 0, total = 0;
    for (const auto& row : printed::kTable2) {
        const auto f = ci_fisher(TrueIC(row.rho), row.n);
        const auto a = ci_normal_approx(TrueIC(row.rho), row.n);
        exact += round_units(f.lower, 3) == round_units(row.fisher_lo, 3);
        exact += round_units(f.upper, 3) == round_units(row.fisher_hi, 3);
        exact += round_units(a.lower, 3) == round_units(row.normal_lo, 3);
        exact += round_units(a.upper, 3) == round_units(row.normal_hi, 3);
        total += 4;
    }
    r.line(1, exact == total,
           fmt::format("Table 2 analytic columns: {}/{} endpoints exact at 3 decimals", exact, total));
}

void criterion_2(Report& r) {
    double worst = 0.0;
    for (std::size_t i = 0; i < printed::kTable2.size(); ++i) {
        const auto& row = printed::kTable2[i];
        const auto sim = ci_simulated(TrueIC(row.rho), row.n, 0.95,
                                      {kDraws, kDefaultSeed, static_cast<std::uint32_t>(i), 0});
        const auto f = ci_fisher(TrueIC(row.rho), row.n);
        worst = std::max({worst, std::fabs(sim.lower - f.lower), std::fabs(sim.upper - f.upper)});
    }
    r.line(2, worst <= 0.01,
           fmt::format("Table 2 simulation column ({} draws): max |sim - Fisher| = {:.4f} (tol 0.01)", kDraws,
                       worst));
}

void criterion_3(Report& r) {
    const double c = theoretical_spread_constant();
    r.line(3, std::fabs(c - 2.7998) <= 0.001, fmt::format("spread constant = {:.6f} (2.7998 +/- 0.001)", c));
}

void criterion_4(Report& r, const GridSimulation& sim) {
    const auto cells = spread_ratio_table(sim);
    double worst = 0.0;
    int checked = 0, outside = 0;
    double small_max_dev = 0.0;
    for (const auto& c : cells) {
        const double dev = std::fabs(c.mean_ratio - 2.80);
        if (c.n >= 500 && std::fabs(c.rho) >= 0.03 - 1e-12) {
            ++checked;
            worst = std::max(worst, dev);
            if (dev > 0.05) {
                ++outside;
                r.detail(fmt::format("n={} rho={:+.2f}: ratio {:.3f} (se {:.3f})", c.n, c.rho, c.mean_ratio,
                                     c.std_error));
            }
        }
        if (c.n == 50 && std::fabs(c.rho) <= 0.02 + 1e-12) small_max_dev = std::max(small_max_dev, dev);
    }
    const bool unstable = small_max_dev > 0.28;
    r.line(4, outside == 0 && unstable,
           fmt::format("Table 3 ({} draws): {}/{} cells with n>=500, |rho|>=0.03 within 0.05 of 2.80 (max dev "
                       "{:.3f}); n=50, |rho|<=0.02 max dev {:.2f} (> 0.28 required)",
                       kDraws, checked - outside, checked, worst, small_max_dev));
}

void criterion_5(Report& r, const GridSimulation& sim) {
    const auto cells = negative_spread_prevalence(sim);
    const auto& ics = sim.grid.true_ics;
    auto at = [&](std::size_t n, double rho) {
        for (const auto& c : cells)
            if (c.n == n && std::fabs(c.rho - rho) < 1e-12) return c.fraction_negative;
        return std::nan("");
    };
    int printed_ok = 0, printed_total = 0;
    double printed_worst = 0.0;
    for (std::size_t i = 0; i < printed::kTable4Ics.size(); ++i) {
        for (std::size_t j = 0; j < printed::kSizes.size(); ++j) {
            const double dev = std::fabs(at(printed::kSizes[j], printed::kTable4Ics[i]) - printed::kTable4[i][j]);
            ++printed_total;
            printed_worst = std::max(printed_worst, dev);
            if (dev <= 0.03) {
                ++printed_ok;
            } else {
                r.detail(fmt::format("n={} rho={:+.2f}: simulated {:.4f}, printed {:.4f}", printed::kSizes[j],
                                     printed::kTable4Ics[i], at(printed::kSizes[j], printed::kTable4Ics[i]),
                                     printed::kTable4[i][j]));
            }
        }
    }
    double anti_worst = 0.0;
    for (double rho : ics) {
        if (rho <= 0.0 || ic_index(ics, -rho) == ics.size()) continue;
        for (std::size_t n : sim.grid.universe_sizes)
            anti_worst = std::max(anti_worst, std::fabs(at(n, rho) + at(n, -rho) - 1.0));
    }
    double zero_worst = 0.0;
    for (std::size_t n : sim.grid.universe_sizes) zero_worst = std::max(zero_worst, std::fabs(at(n, 0.0) - 0.5));
    r.line(5, printed_ok == printed_total && anti_worst <= 0.03 && zero_worst <= 0.03,
           fmt::format("Table 4 ({} draws): {}/{} printed cells within 0.03 (max dev {:.4f}); anti-symmetry max "
                       "dev {:.4f}; rho=0 row max dev from 0.5 {:.4f}",
                       kDraws, printed_ok, printed_total, printed_worst, anti_worst, zero_worst));
}

void criterion_6(Report& r, std::size_t draws) {
    SimulationGrid g = reference_grid();
    g.draws = draws;
    const auto t0 = std::chrono::steady_clock::now();
    const auto cells = bias_surface(g, 0);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double lo = 1e9, hi = -1e9;
    const BiasSurfaceCell* lo_cell = nullptr;
    const BiasSurfaceCell* hi_cell = nullptr;
    for (const auto& c : cells) {
        const double d = c.relative_difference();
        if (d < lo) lo = d, lo_cell = &c;
        if (d > hi) hi = d, hi_cell = &c;
    }
    r.line(6, lo >= -0.04 && hi <= 0.12,
           fmt::format("recovery bias, (theory - sim)/sim over {} cells ({} draws, {:.0f}s): min {:+.2f}% (n={}, "
                       "rho={:+.2f}), max {:+.2f}% (n={}, rho={:+.2f}); band -4%..+12%",
                       cells.size(), draws, secs, 100 * lo, lo_cell->n, lo_cell->rho, 100 * hi, hi_cell->n,
                       hi_cell->rho));
}

void criterion_7(Report& r) {
    const auto rows = table5_fixture();
    int ok = 0, t_within = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& want = printed::kTable5[i];
        const auto d = decompose_summary(rows[i].mean_ic, rows[i].std_ic, rows[i].universe_size);
        const bool exact = round_units(d.std_eN, 3) == round_units(want.std_eN, 3) &&
                           round_units(d.std_et, 3) == round_units(want.std_et, 3) &&
                           round_units(100.0 * d.time_varying_share, 1) == round_units(want.pct, 1) &&
                           d.minimal_T && *d.minimal_T == want.minimal_T;
        ok += exact;
        t_within += d.minimal_T && std::labs(*d.minimal_T - want.minimal_T) <= 1;
    }
    r.line(7, ok == static_cast<int>(rows.size()),
           fmt::format("Table 5: {}/{} rows exact (std_eN, std_et, %, minimal T); minimal T within 1 on {}/{}", ok,
                       rows.size(), t_within, rows.size()));
}

void criterion_8(Report& r) {
    const std::size_t windows[] = {12, 24, 36};
    int ok = 0;
    for (const auto& row : printed::kTable6)
        for (int w = 0; w < 3; ++w) {
            MonitoringConfig cfg{.rho0 = row.rho0, .sigma_ic = row.sigma, .window_T = windows[w]};
            ok += round_units(avg_ic_critical_value(cfg), 3) == round_units(row.windows[w], 3);
        }
    r.line(8, ok == 27, fmt::format("Table 6: {}/27 critical values exact at 3 decimals", ok));
}

void criterion_9(Report& r) {
    int ok = 0;
    std::string shown;
    for (std::size_t k = 1; k <= 4; ++k) {
        const double pct = 100.0 * binomial_tail(k, 12, 0.05);
        const int decimals = k == 4 ? 1 : 0;
        ok += round_units(pct, decimals) == round_units(printed::kTable7Percent[k - 1], decimals);
        shown += fmt::format("{}{:.{}f}%", k == 1 ? "" : ", ", round_half_away(pct, decimals), decimals);
    }
    r.line(9, ok == 4, fmt::format("Table 7: {}/4 tail probabilities at printed precision ({})", ok, shown));
}

void criterion_10(Report& r) {
    double worst = 0.0;
    for (const auto& row : printed::kTable8) {
        for (int a = 0; a < 2; ++a) {
            PowerQuery q{.ic0 = row.delta, .ic1 = 0.0, .sigma_ic = row.sigma, .window_T = 12,
                         .alpha = a == 0 ? 0.05 : 0.02};
            worst = std::max(worst, std::fabs(power_avg_test(q) - row.power[a]));
            worst = std::max(worst, std::fabs(power_binomial_test(q, 2) - row.power[2 + a]));
        }
    }
    double roundtrip = 0.0;
    for (double target : {0.02, 0.05}) {
        const double am = calibrate_alpha_m(2, 12, target);
        roundtrip = std::max(roundtrip, std::fabs(binomial_test_alpha({2, 12, am}) - target));
    }
    r.line(10, worst <= 0.002 && roundtrip <= 1e-9,
           fmt::format("Table 8: max |power - printed| = {:.5f} over 36 entries (tol 0.002); calibration "
                       "round-trip error {:.1e}",
                       worst, roundtrip));
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](double x, double y) {
               return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
           });
}

void criterion_11(Report& r) {
    // Determinism under parallelism.
    SimulationGrid g{{50, 250, 1000}, {-0.05, 0.0, 0.02, 0.1}, 500, 99};
    const auto base = simulate_grid(g, {1, true});
    bool identical = true;
    for (unsigned t : {2u, 4u, 7u}) {
        const auto other = simulate_grid(g, {t, true});
        for (std::size_t c = 0; c < base.cells.size(); ++c)
            identical = identical && same_bits(base.cells[c].estimates, other.cells[c].estimates) &&
                        same_bits(base.cells[c].spreads, other.cells[c].spreads);
    }

    // Coverage of the 95% Fisher interval for the estimate.
    std::size_t inside = 0, total = 0;
    std::uint32_t cell = 0;
    for (double rho : {-0.1, 0.0, 0.05, 0.3})
        for (std::size_t n : {50, 500, 3000}) {
            const auto ci = ci_fisher(TrueIC(rho), n);
            for (double e : simulate_estimates(rho, n, 2000, 4242, cell++, 0)) {
                inside += e >= ci.lower && e <= ci.upper;
                ++total;
            }
        }
    const double coverage = static_cast<double>(inside) / static_cast<double>(total);

    // Size of both monitoring tests under the null, realized ICs with known sd.
    const double rho0 = 0.02, sigma = 0.08;
    const std::size_t reps = 40000;
    const MonitoringConfig cfg{.rho0 = rho0, .sigma_ic = sigma};
    const double crit = avg_ic_critical_value(cfg);
    const double alpha_m = calibrate_alpha_m(2, 12, 0.05);
    const double monthly = rho0 - normal_inverse_cdf(1.0 - alpha_m) * sigma;
    std::vector<double> z(12 * reps);
    fill_standard_normal({777, 0, 0}, Substream::auxiliary, z);
    std::size_t avg_rej = 0, bin_rej = 0;
    for (std::size_t k = 0; k < reps; ++k) {
        double s = 0.0;
        std::size_t count = 0;
        for (std::size_t t = 0; t < 12; ++t) {
            const double ic = rho0 + sigma * z[12 * k + t];
            s += ic;
            count += ic < monthly;
        }
        avg_rej += s / 12.0 < crit;
        bin_rej += count > 2;
    }
    const double se = std::sqrt(0.05 * 0.95 / static_cast<double>(reps));
    const double avg_size = static_cast<double>(avg_rej) / static_cast<double>(reps);
    const double bin_size = static_cast<double>(bin_rej) / static_cast<double>(reps);
    const bool size_ok = std::fabs(avg_size - 0.05) <= 3 * se && std::fabs(bin_size - 0.05) <= 3 * se;

    // Power monotonicity.
    bool monotone = true;
    for (double alpha : {0.02, 0.05})
        for (double sig : {0.04, 0.06, 0.08, 0.1, 0.15}) {
            double prev_a = 0.0, prev_b = 0.0;
            for (int d = 0; d <= 20; ++d) {
                const PowerQuery q{.ic0 = 0.005 * d, .ic1 = 0.0, .sigma_ic = sig, .window_T = 12, .alpha = alpha};
                const double pa = power_avg_test(q), pb = power_binomial_test(q, 2);
                monotone = monotone && pa >= prev_a && pb >= prev_b;
                PowerQuery noisier = q;
                noisier.sigma_ic *= 1.25;
                PowerQuery longer = q;
                longer.window_T = 24;
                if (d > 0)
                    monotone = monotone && power_avg_test(noisier) < pa && power_binomial_test(noisier, 2) < pb &&
                               power_avg_test(longer) > pa;
                prev_a = pa;
                prev_b = pb;
            }
        }

    // Pearson vs Spearman on simulated pairs.
    double ps_worst = 0.0;
    std::uint32_t draw = 0;
    for (std::size_t n : {1000, 3000, 5000}) {
        std::vector<double> diffs;
        for (double rho : {-0.1, 0.0, 0.05, 0.3}) {
            double mean_diff = 0.0;
            for (int k = 0; k < 100; ++k) {
                const auto p = sample_correlated_pair(n, rho, {31337, 0, draw++});
                const double d = pearson(p.x, p.y) - spearman(p.x, p.y);
                diffs.push_back(std::fabs(d));
                mean_diff += d / 100.0;
            }
            r.detail(fmt::format("n={} rho={:+.2f}: mean(pearson - spearman) {:+.4f}", n, rho, mean_diff));
        }
        std::sort(diffs.begin(), diffs.end());
        ps_worst = std::max(ps_worst, diffs.back());
        r.detail(fmt::format("n={}: |pearson - spearman| median {:.4f}, 95th pct {:.4f}, max {:.4f}", n,
                             diffs[diffs.size() / 2], diffs[diffs.size() * 95 / 100], diffs.back()));
    }

    const bool pass = identical && std::fabs(coverage - 0.95) <= 0.02 && size_ok && monotone && ps_worst <= 0.02;
    r.line(11, pass,
           fmt::format("properties: thread-count determinism {}; Fisher coverage {:.4f} (0.95 +/- 0.02); null size "
                       "avg {:.4f} / binomial {:.4f} (0.05 +/- {:.4f}); power monotone {}; max |pearson - "
                       "spearman| {:.4f} over 1200 pairs n>=1000 (tol 0.02)",
                       identical ? "yes" : "NO", coverage, avg_size, bin_size, 3 * se, monotone ? "yes" : "NO",
                       ps_worst));
}

std::set<int> parse_ids(const char* text) {
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> expect_red;
    std::size_t bias_draws = 40000;
    std::string report_path;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--expect-red=", 13) == 0) expect_red = parse_ids(argv[i] + 13);
        else if (std::strncmp(argv[i], "--bias-draws=", 13) == 0) bias_draws = std::stoul(argv[i] + 13);
        else if (std::strncmp(argv[i], "--report=", 9) == 0) report_path = argv[i] + 9;
        else {
            std::cerr << "usage: ickit_acceptance [--expect-red=IDS] [--bias-draws=N] [--report=PATH]\n";
            return 2;
        }
    }

    Report r;
    criterion_1(r);
    criterion_2(r);
    criterion_3(r);
    {
        SimulationGrid g = reference_grid_with_zero();
        g.draws = kDraws;
        const auto sim = simulate_grid(g, {0, true});
        criterion_4(r, sim);
        criterion_5(r, sim);
    }
    criterion_6(r, bias_draws);
    criterion_7(r);
    criterion_8(r);
    criterion_9(r);
    criterion_10(r);
    criterion_11(r);

    const bool matches = r.red == expect_red;
    auto join = [](const std::set<int>& ids) {
        std::string out;
        for (int id : ids) out += (out.empty() ? "" : ",") + std::to_string(id);
        return out.empty() ? std::string("none") : out;
    };
    const auto summary = fmt::format("{} of 11 criteria pass; red: {}; expected red: {} -> {}\n", 11 - r.red.size(),
                                     join(r.red), join(expect_red), matches ? "OK" : "MISMATCH");
    std::cout << summary;
    r.text << summary;
    if (!report_path.empty()) std::ofstream(report_path) << r.text.str();
    return matches ? 0 : 1;
}
