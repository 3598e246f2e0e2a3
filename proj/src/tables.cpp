#include "ickit/tables.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

#include "ickit/error.hpp"
#include "ickit/monitoring.hpp"
#include "ickit/quintile_analysis.hpp"
#include "ickit/rounding.hpp"
#include "json.hpp"

namespace ickit {

namespace {

std::string fixed(double v, int decimals) {
    return fmt::format("{:.{}f}", round_half_away(v, decimals), decimals);
}

std::string full_precision(const CellValue& v) {
    if (std::holds_alternative<double>(v)) return fmt::format("{}", std::get<double>(v));
    if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
    if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
    return {};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string rho_label(double rho) { return fmt::format("{}", rho); }

void render_csv(std::ostream& out, const std::vector<Table>& tables) {
    bool first = true;
    for (const auto& t : tables) {
        if (!first) out << '\n';
        first = false;
        if (tables.size() > 1) out << "# " << t.id << ": " << t.title << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << (c ? "," : "") << csv_escape(t.columns[c].key);
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(full_precision(row[c]));
            out << '\n';
        }
    }
}

void render_json(std::ostream& out, const std::vector<Table>& tables) {
    nlohmann::ordered_json doc;
    doc["tables"] = nlohmann::ordered_json::array();
    for (const auto& t : tables) {
        nlohmann::ordered_json jt;
        jt["id"] = t.id;
        jt["title"] = t.title;
        jt["rows"] = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json jr = nlohmann::ordered_json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                const auto& key = t.columns[c].key;
                std::visit(
                    [&](const auto& v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, std::monostate>) jr[key] = nullptr;
                        else jr[key] = v;
                    },
                    row[c]);
            }
            jt["rows"].push_back(std::move(jr));
        }
        if (!t.notes.empty()) jt["notes"] = t.notes;
        doc["tables"].push_back(std::move(jt));
    }
    out << doc.dump(2) << '\n';
}

void render_markdown(std::ostream& out, const std::vector<Table>& tables) {
    bool first = true;
    for (const auto& t : tables) {
        if (!first) out << '\n';
        first = false;
        out << "### " << t.title << "\n\n";
        std::vector<std::string> header;
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            const auto& col = t.columns[c];
            if (col.style == ColumnStyle::interval_upper) continue;
            header.push_back(col.title);
        }
        out << "| " << fmt::format("{}", fmt::join(header, " | ")) << " |\n|";
        for (std::size_t i = 0; i < header.size(); ++i) out << "---|";
        out << '\n';
        for (const auto& row : t.rows) {
            std::vector<std::string> cells;
            for (std::size_t c = 0; c < row.size(); ++c) {
                const auto& col = t.columns[c];
                if (col.style == ColumnStyle::interval_upper) continue;
                if (col.style == ColumnStyle::interval_lower && c + 1 < row.size())
                    cells.push_back("(" + format_cell(row[c], col) + ", " +
                                    format_cell(row[c + 1], t.columns[c + 1]) + ")");
                else
                    cells.push_back(format_cell(row[c], col));
            }
            out << "| " << fmt::format("{}", fmt::join(cells, " | ")) << " |\n";
        }
        for (const auto& note : t.notes) out << "\n" << note << '\n';
    }
}

} // namespace

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    if (text == "md" || text == "markdown") return OutputFormat::markdown;
    return std::nullopt;
}

std::string format_cell(const CellValue& value, const Column& column) {
    if (std::holds_alternative<std::monostate>(value)) return "";
    if (std::holds_alternative<std::string>(value)) return std::get<std::string>(value);
    if (std::holds_alternative<long long>(value)) return std::to_string(std::get<long long>(value));
    const double v = std::get<double>(value);
    switch (column.style) {
    case ColumnStyle::percent: {
        const double pct = 100.0 * v;
        return (std::fabs(pct) >= 1.0 ? fixed(pct, 0) : fixed(pct, 1)) + "%";
    }
    case ColumnStyle::text: return fmt::format("{}", v);
    case ColumnStyle::integer: return fmt::format("{:.0f}", v);
    default: return fixed(v, column.decimals);
    }
}

void render(std::ostream& out, const std::vector<Table>& tables, OutputFormat format) {
    switch (format) {
    case OutputFormat::csv: render_csv(out, tables); break;
    case OutputFormat::json: render_json(out, tables); break;
    case OutputFormat::markdown: render_markdown(out, tables); break;
    }
}

Table confidence_interval_table(double level, const SimulationSettings& sim) {
    Table t;
    t.id = "2";
    t.title = fmt::format("{:g}% confidence intervals for the estimated IC by true IC and universe size",
                          100.0 * level);
    t.columns = {{"rho", "Actual IC", ColumnStyle::text, 0},
                 {"n", "Universe Size", ColumnStyle::integer, 0},
                 {"sim_lower", "Simulation", ColumnStyle::interval_lower, 3},
                 {"sim_upper", "", ColumnStyle::interval_upper, 3},
                 {"fisher_lower", "Fisher transform", ColumnStyle::interval_lower, 3},
                 {"fisher_upper", "", ColumnStyle::interval_upper, 3},
                 {"normal_lower", "Normal approximation", ColumnStyle::interval_lower, 3},
                 {"normal_upper", "", ColumnStyle::interval_upper, 3}};
    const double rhos[] = {-0.05, -0.01, 0.0, 0.01, 0.05, 0.1};
    const std::size_t sizes[] = {50, 500, 5000};
    std::uint32_t cell = 0;
    for (double rho : rhos) {
        for (std::size_t n : sizes) {
            const TrueIC truth(rho);
            const auto s = ci_simulated(truth, n, level, {sim.draws, sim.seed, cell++, sim.threads});
            const auto f = ci_fisher(truth, n, level);
            const auto a = ci_normal_approx(truth, n, level);
            t.rows.push_back({rho_label(rho), static_cast<long long>(n), s.lower, s.upper, f.lower,
                              f.upper, a.lower, a.upper});
        }
    }
    t.notes.push_back(fmt::format("Simulation column: {} draws, seed {}.", sim.draws, sim.seed));
    return t;
}

Table spread_ratio_wide_table(const GridSimulation& simulation) {
    const auto cells = spread_ratio_table(simulation);
    Table t;
    t.id = "3";
    t.title = "Average ratio of quintile spread to actual IC from simulation";
    t.columns.push_back({"n", "N", ColumnStyle::integer, 0});
    std::vector<double> rhos;
    for (double r : simulation.grid.true_ics)
        if (r != 0.0) rhos.push_back(r);
    for (double r : rhos) t.columns.push_back({"rho=" + rho_label(r), rho_label(r), ColumnStyle::fixed, 2});
    for (std::size_t n : simulation.grid.universe_sizes) {
        std::vector<CellValue> row{static_cast<long long>(n)};
        for (double r : rhos)
            for (const auto& c : cells)
                if (c.n == n && c.rho == r) row.emplace_back(c.mean_ratio);
        t.rows.push_back(std::move(row));
    }
    t.notes.push_back(fmt::format("Theoretical ratio: {:.4f}. {} draws per cell, seed {}.",
                                  theoretical_spread_constant(), simulation.grid.draws,
                                  simulation.grid.master_seed));
    return t;
}

Table prevalence_wide_table(const GridSimulation& simulation) {
    const auto cells = negative_spread_prevalence(simulation);
    Table t;
    t.id = "4";
    t.title = "Prevalence of negative quintile spread by IC and universe size";
    t.columns.push_back({"rho", "IC", ColumnStyle::text, 0});
    for (std::size_t n : simulation.grid.universe_sizes)
        t.columns.push_back({"n=" + std::to_string(n), std::to_string(n), ColumnStyle::fixed, 4});
    for (double r : simulation.grid.true_ics) {
        std::vector<CellValue> row{rho_label(r)};
        for (std::size_t n : simulation.grid.universe_sizes)
            for (const auto& c : cells)
                if (c.n == n && c.rho == r) row.emplace_back(c.fraction_negative);
        t.rows.push_back(std::move(row));
    }
    t.notes.push_back(fmt::format("{} draws per cell, seed {}.", simulation.grid.draws,
                                  simulation.grid.master_seed));
    return t;
}

Table critical_value_table(double alpha) {
    Table t;
    t.id = "6";
    t.title = fmt::format("{:g}%-critical value for the average realized IC, one-sided test",
                          100.0 * (1.0 - alpha));
    t.columns = {{"rho0", "Underlying IC", ColumnStyle::text, 0},
                 {"sigma", "std of realized IC", ColumnStyle::text, 0},
                 {"T=12", "12 months", ColumnStyle::fixed, 3},
                 {"T=24", "24 months", ColumnStyle::fixed, 3},
                 {"T=36", "36 months", ColumnStyle::fixed, 3}};
    for (double rho0 : {0.0, 0.01, 0.05}) {
        for (double sigma : {0.06, 0.08, 0.1}) {
            std::vector<CellValue> row{rho_label(rho0), rho_label(sigma)};
            for (std::size_t T : {12u, 24u, 36u}) {
                MonitoringConfig cfg;
                cfg.rho0 = rho0;
                cfg.sigma_ic = sigma;
                cfg.window_T = T;
                cfg.alpha = alpha;
                row.emplace_back(avg_ic_critical_value(cfg));
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table reject_count_table(std::size_t T, double alpha_m, std::size_t max_k) {
    Table t;
    t.id = "7";
    t.title = fmt::format("Binomial distribution of the number of {:g}%-rejects in {} months",
                          100.0 * alpha_m, T);
    t.columns = {{"rejects_at_least", "Number of rejects", ColumnStyle::integer, 0},
                 {"probability", "Probability", ColumnStyle::percent, 0}};
    for (std::size_t k = 1; k <= max_k && k <= T; ++k)
        t.rows.push_back({static_cast<long long>(k), binomial_tail(k, T, alpha_m)});
    return t;
}

Table power_table(const PowerGrid& grid) {
    Table t;
    t.id = "8";
    t.title = fmt::format("Power of the {} month hypothesis tests (binomial: S = {}, alpha_m calibrated)",
                          grid.window_T, grid.max_rejects);
    t.columns = {{"delta", "IC0 - IC1", ColumnStyle::text, 0}, {"sigma", "sigma_IC", ColumnStyle::text, 0}};
    for (double a : grid.alphas)
        t.columns.push_back({fmt::format("avg_{:g}", a), fmt::format("Average IC {:g}%", 100 * a),
                             ColumnStyle::fixed, 3});
    for (double a : grid.alphas)
        t.columns.push_back({fmt::format("binom_{:g}", a), fmt::format("Binomial {:g}%", 100 * a),
                             ColumnStyle::fixed, 3});
    for (double d : grid.deltas) {
        for (double s : grid.sigmas) {
            std::vector<CellValue> row{rho_label(d), rho_label(s)};
            for (double a : grid.alphas) row.emplace_back(power_avg_test({d, 0.0, s, grid.window_T, a}));
            for (double a : grid.alphas)
                row.emplace_back(power_binomial_test({d, 0.0, s, grid.window_T, a}, grid.max_rejects));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table bias_surface_table(const std::vector<BiasSurfaceCell>& cells) {
    Table t;
    t.id = "surface";
    t.title = "IC recovery bias: simulated mean vs theoretical";
    t.columns = {{"n", "N", ColumnStyle::integer, 0},
                 {"rho", "Actual IC", ColumnStyle::text, 0},
                 {"simulated_bias", "Simulated", ColumnStyle::fixed, 4},
                 {"theoretical_bias", "Theoretical", ColumnStyle::fixed, 4},
                 {"relative_difference", "(theory - sim) / sim", ColumnStyle::fixed, 4}};
    for (const auto& c : cells)
        t.rows.push_back({static_cast<long long>(c.n), rho_label(c.rho), c.mean_recovery_bias_sim,
                          c.expected_recovery_bias_theory, c.relative_difference()});
    return t;
}

Table decomposition_table(const std::vector<ICSummary>& rows, double significance,
                          PeriodRounding rounding) {
    Table t;
    t.id = "5";
    t.title = "Realized IC standard deviation decomposition";
    t.columns = {{"universe_size", "N", ColumnStyle::integer, 0},
                 {"model_name", "Model/Factor", ColumnStyle::text, 0},
                 {"study_period", "Study period", ColumnStyle::text, 0},
                 {"mean_ic", "Average IC", ColumnStyle::fixed, 3},
                 {"std_total", "std(IC)", ColumnStyle::fixed, 3},
                 {"std_eN", "std(e_N)", ColumnStyle::fixed, 3},
                 {"std_et", "std(e_t)", ColumnStyle::fixed, 3},
                 {"std_et_pct", "std(e_t) %", ColumnStyle::fixed, 1},
                 {"minimal_T", "Minimal T", ColumnStyle::integer, 0},
                 {"error", "Error", ColumnStyle::text, 0}};
    for (const auto& r : rows) {
        std::vector<CellValue> row{static_cast<long long>(r.universe_size), r.model_name, r.study_period,
                                   r.mean_ic, r.std_ic, std_eN(r.universe_size)};
        try {
            const auto d = decompose_summary(r.mean_ic, r.std_ic, r.universe_size, significance, rounding);
            row.emplace_back(d.std_et);
            row.emplace_back(100.0 * d.time_varying_share);
            if (d.minimal_T) row.emplace_back(static_cast<long long>(*d.minimal_T));
            else row.emplace_back(std::string("never"));
            row.emplace_back(std::monostate{});
        } catch (const InfeasibleDecomposition& e) {
            row.insert(row.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
            row.emplace_back(std::string(e.what()));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace ickit
