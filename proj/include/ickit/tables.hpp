#pragma once

// Builds the reproduction tables and renders any table as CSV, JSON or
// Markdown. CSV and JSON carry full double precision; Markdown uses each
// column's printed precision.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ickit/ic_dynamics.hpp"
#include "ickit/series.hpp"
#include "ickit/simulation.hpp"
#include "ickit/static_ic.hpp"

namespace ickit {

enum class OutputFormat { csv, json, markdown };

std::optional<OutputFormat> parse_output_format(std::string_view text);

enum class ColumnStyle {
    text,
    integer,
    fixed,           // `decimals` places
    percent,         // probability shown as 46% / 0.2% in Markdown
    interval_lower,  // Markdown joins with the next column as "(lo, hi)"
    interval_upper,
};

struct Column {
    std::string key;
    std::string title;
    ColumnStyle style = ColumnStyle::fixed;
    int decimals = 3;
};

using CellValue = std::variant<std::monostate, std::string, long long, double>;

struct Table {
    std::string id;
    std::string title;
    std::vector<Column> columns;
    std::vector<std::vector<CellValue>> rows;
    std::vector<std::string> notes;
};

void render(std::ostream& out, const std::vector<Table>& tables, OutputFormat format);

/// Markdown text of one cell (printed precision).
std::string format_cell(const CellValue& value, const Column& column);

struct SimulationSettings {
    std::size_t draws = 1000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
};

Table confidence_interval_table(double level, const SimulationSettings& sim);
Table spread_ratio_wide_table(const GridSimulation& simulation);
Table prevalence_wide_table(const GridSimulation& simulation);
Table critical_value_table(double alpha = 0.05);
Table reject_count_table(std::size_t T = 12, double alpha_m = 0.05, std::size_t max_k = 4);

struct PowerGrid {
    std::vector<double> deltas{0.01, 0.03, 0.05};
    std::vector<double> sigmas{0.06, 0.08, 0.1};
    std::vector<double> alphas{0.05, 0.02};
    std::size_t window_T = 12;
    std::size_t max_rejects = 2;
};

Table power_table(const PowerGrid& grid = {});

Table bias_surface_table(const std::vector<BiasSurfaceCell>& cells);

/// One row per input; rows whose decomposition is infeasible carry an error entry.
Table decomposition_table(const std::vector<ICSummary>& rows, double significance = 0.05,
                          PeriodRounding rounding = PeriodRounding::nearest);

} // namespace ickit
