// ictool: reproduction tables, bias-surface grids, realized-IC decomposition,
// monitoring and power analysis from the command line.
//
// Exit status: 0 success / no flags, 1 usage or input error, 2 monitoring
// flags raised.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ickit/csv_io.hpp"
#include "ickit/error.hpp"
#include "ickit/monitoring.hpp"
#include "ickit/quintile_analysis.hpp"
#include "ickit/report_io.hpp"
#include "ickit/static_ic.hpp"
#include "ickit/tables.hpp"

namespace {

using namespace ickit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFlags = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    std::size_t draws = 1000;
    std::string format = "md";
    std::string out_path;
    unsigned threads = 0;

    std::string window;  // default depends on command
    std::string rho0 = "0";
    std::string sigma;
    std::string alpha;
    double level = 0.95;
    std::size_t max_rejects = 2;
    double alpha_m = 0.05;
    bool two_sided = false;

    std::vector<int> table_ids;
    bool symmetric = false;
    std::string input;
    bool fixture = false;
    std::size_t universe_size = 0;
    std::string model_name;
    bool ceiling = false;
    std::string deltas;
};

double parse_real(const std::string& text, const char* flag) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v))
        throw UsageError(std::string(flag) + ": invalid number '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item, flag));
    if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
    return out;
}

std::size_t parse_window(const std::string& text, std::size_t fallback) {
    if (text.empty()) return fallback;
    const double v = parse_real(text, "--window");
    if (v < 1 || v != std::floor(v)) throw UsageError("--window must be a positive integer");
    return static_cast<std::size_t>(v);
}

OutputFormat output_format(const RunConfig& cfg) {
    const auto f = parse_output_format(cfg.format);
    if (!f) throw UsageError("--format must be csv, json or md");
    return *f;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + cfg.out_path + "'");
    out << text;
}

int cmd_tables(const RunConfig& cfg) {
    const std::set<int> known{2, 3, 4, 6, 7, 8};
    std::vector<int> ids = cfg.table_ids;
    if (ids.empty()) ids.assign(known.begin(), known.end());
    for (int id : ids)
        if (!known.count(id)) throw UsageError("unknown table id " + std::to_string(id) + " (valid: 2 3 4 6 7 8)");

    const double alpha = cfg.alpha.empty() ? 0.05 : parse_real(cfg.alpha, "--alpha");
    std::optional<GridSimulation> grid_sim;
    auto grid = [&]() -> const GridSimulation& {
        if (!grid_sim) {
            SimulationGrid g = reference_grid_with_zero();
            g.draws = cfg.draws;
            g.master_seed = cfg.seed;
            grid_sim = simulate_grid(g, {cfg.threads, true});
        }
        return *grid_sim;
    };

    std::vector<Table> tables;
    for (int id : ids) {
        switch (id) {
        case 2: tables.push_back(confidence_interval_table(cfg.level, {cfg.draws, cfg.seed, cfg.threads})); break;
        case 3: tables.push_back(spread_ratio_wide_table(grid())); break;
        case 4: tables.push_back(prevalence_wide_table(grid())); break;
        case 6: tables.push_back(critical_value_table(alpha)); break;
        case 7: tables.push_back(reject_count_table(12, cfg.alpha_m)); break;
        case 8: {
            PowerGrid pg;
            pg.max_rejects = cfg.max_rejects;
            pg.window_T = parse_window(cfg.window, 12);
            tables.push_back(power_table(pg));
            break;
        }
        }
    }
    std::ostringstream out;
    render(out, tables, output_format(cfg));
    emit(cfg, out.str());
    return kExitOk;
}

int cmd_surface(const RunConfig& cfg) {
    SimulationGrid g = reference_grid();
    g.draws = cfg.draws;
    g.master_seed = cfg.seed;
    if (cfg.symmetric) {
        std::set<double> rhos;
        for (double r : g.true_ics) {
            rhos.insert(r);
            rhos.insert(-r);
        }
        g.true_ics.assign(rhos.begin(), rhos.end());
    }
    const auto cells = bias_surface(g, cfg.threads);
    std::ostringstream out;
    render(out, {bias_surface_table(cells)}, output_format(cfg));
    emit(cfg, out.str());
    return kExitOk;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_decompose(const RunConfig& cfg) {
    if (cfg.fixture == !cfg.input.empty()) throw UsageError("decompose: give exactly one of INPUT or --fixture");
    const double significance = cfg.alpha.empty() ? 0.05 : parse_real(cfg.alpha, "--alpha");
    const auto rounding = cfg.ceiling ? PeriodRounding::ceiling : PeriodRounding::nearest;

    std::vector<ICSummary> rows;
    if (cfg.fixture) {
        rows = table5_fixture();
    } else {
        const std::string text = read_file(cfg.input);
        std::istringstream in(text);
        std::string header;
        std::getline(in, header);
        if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
        in.clear();
        in.seekg(0);
        if (detect_csv_kind(header) == CsvKind::summary) {
            rows = read_summary_csv(in);
        } else {
            if (cfg.universe_size <= 3) throw UsageError("decompose: series input needs --universe-size > 3");
            const auto series = read_series_csv(in, cfg.model_name, cfg.universe_size);
            const auto values = series.values();
            if (values.size() < 2) throw UsageError("decompose: series needs at least 2 observations");
            ICSummary s;
            s.model_name = cfg.model_name.empty() ? "series" : cfg.model_name;
            s.universe_size = cfg.universe_size;
            s.mean_ic = sample_mean(values);
            s.std_ic = sample_sd(values);
            s.study_period = series.observations().front().period.str() + ".." +
                             series.observations().back().period.str();
            rows.push_back(std::move(s));
        }
    }
    std::ostringstream out;
    render(out, {decomposition_table(rows, significance, rounding)}, output_format(cfg));
    emit(cfg, out.str());
    return kExitOk;
}

int cmd_monitor(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("monitor: INPUT csv required");
    const std::string text = read_file(cfg.input);
    std::istringstream in(text);
    const auto series = read_series_csv(in, cfg.model_name,
                                        cfg.universe_size ? std::optional(cfg.universe_size) : std::nullopt);
    if (series.empty()) throw UsageError("monitor: series has no observations");

    MonitoringConfig mc;
    mc.rho0 = parse_real(cfg.rho0, "--rho0");
    mc.window_T = parse_window(cfg.window, 12);
    mc.alpha = cfg.alpha.empty() ? 0.05 : parse_real(cfg.alpha, "--alpha");
    mc.tail = cfg.two_sided ? TestTail::two_sided : TestTail::one_sided_lower;
    const std::string sigma = cfg.sigma.empty() ? "historical" : cfg.sigma;
    if (sigma == "historical" || sigma == "window") {
        if (series.size() < 2) throw UsageError("monitor: need 2+ observations to estimate sigma; pass --sigma <real>");
        mc.sigma_ic = sample_sd(series.values());
        mc.sigma_source = sigma == "window" ? SigmaSource::window : SigmaSource::historical;
    } else {
        mc.sigma_ic = parse_real(sigma, "--sigma");
        mc.sigma_source = SigmaSource::historical;
    }
    if (!(mc.sigma_ic > 0.0)) throw UsageError("monitor: sigma must be positive");

    BinomialTestConfig bc;
    bc.window_T = mc.window_T;
    bc.max_rejects_S = cfg.max_rejects;
    bc.alpha_m = cfg.alpha_m;

    const auto report = monitor(series, mc, bc);
    std::ostringstream out;
    write_report(out, report, output_format(cfg));
    emit(cfg, out.str());
    return report.flags_raised() ? kExitFlags : kExitOk;
}

int cmd_power(const RunConfig& cfg) {
    PowerGrid pg;
    if (!cfg.deltas.empty()) pg.deltas = parse_list(cfg.deltas, "--deltas");
    if (!cfg.sigma.empty()) pg.sigmas = parse_list(cfg.sigma, "--sigma");
    if (!cfg.alpha.empty()) pg.alphas = parse_list(cfg.alpha, "--alpha");
    pg.window_T = parse_window(cfg.window, 12);
    pg.max_rejects = cfg.max_rejects;
    if (pg.max_rejects >= pg.window_T) throw UsageError("power: --max-rejects must be below --window");
    std::ostringstream out;
    render(out, {power_table(pg)}, output_format(cfg));
    emit(cfg, out.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-coefficient analytics: simulation tables, decomposition, monitoring"};
    app.set_config("--config", "", "Flat key = value configuration file; flags override it");
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--seed", cfg.seed, "Master seed for simulations")->capture_default_str();
    app.add_option("--draws", cfg.draws, "Monte Carlo draws per cell")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "Output format: csv, json or md")->capture_default_str();
    app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--window", cfg.window, "Data window in months (6, 12, 24, 36 or any positive integer)");
    app.add_option("--rho0", cfg.rho0, "Underlying IC under the null")->capture_default_str();
    app.add_option("--sigma", cfg.sigma,
                   "monitor: historical | window | <real>; power: comma list of sigma_IC");
    app.add_option("--alpha", cfg.alpha, "Test size (power: comma list)");
    app.add_option("--level", cfg.level, "Confidence level for table 2")->capture_default_str();
    app.add_option("--max-rejects", cfg.max_rejects, "Binomial test: max acceptable rejects S")->capture_default_str();
    app.add_option("--alpha-m", cfg.alpha_m, "Binomial test: monthly significance")->capture_default_str();
    app.add_flag("--two-sided", cfg.two_sided, "Average IC test: two-sided instead of one-sided lower");

    auto* tables = app.add_subcommand("tables", "Reproduce tables 2, 3, 4, 6, 7, 8")->fallthrough();
    tables->add_option("ids", cfg.table_ids, "Table ids (default: all)");

    auto* surface = app.add_subcommand("surface", "Recovery-bias surface grid (simulated vs theoretical)")->fallthrough();
    surface->add_flag("--symmetric", cfg.symmetric, "Mirror every IC to its negative");

    auto* decompose = app.add_subcommand("decompose", "Decompose realized-IC variability")->fallthrough();
    decompose->add_option("input", cfg.input, "CSV (summary or series schema)");
    decompose->add_flag("--fixture", cfg.fixture, "Use the bundled industry-study table");
    decompose->add_option("--universe-size", cfg.universe_size, "Universe size for series input");
    decompose->add_option("--model-name", cfg.model_name, "Model name for series input");
    decompose->add_flag("--ceiling", cfg.ceiling, "Round minimal T up instead of to nearest");

    auto* monitor_cmd = app.add_subcommand("monitor", "Run the average-IC and binomial tests")->fallthrough();
    monitor_cmd->add_option("input", cfg.input, "Series CSV (date,ic)");
    monitor_cmd->add_option("--model-name", cfg.model_name, "Model name echoed in the report");
    monitor_cmd->add_option("--universe-size", cfg.universe_size, "Universe size echoed in the report");

    auto* power = app.add_subcommand("power", "Power of both tests over a parameter grid")->fallthrough();
    power->add_option("--deltas", cfg.deltas, "Comma list of IC0 - IC1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*tables) return cmd_tables(cfg);
        if (*surface) return cmd_surface(cfg);
        if (*decompose) return cmd_decompose(cfg);
        if (*monitor_cmd) return cmd_monitor(cfg);
        if (*power) return cmd_power(cfg);
    } catch (const ParseError& e) {
        std::cerr << "ictool: input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "ictool: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
