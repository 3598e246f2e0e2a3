#pragma once

// CSV inputs (UTF-8, comma-separated, '.' decimal point):
//   series mode:   date,ic                                   (date = YYYY-MM)
//   summary mode:  model_name,universe_size,mean_ic,std_ic[,study_period]

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ickit/series.hpp"

namespace ickit {

enum class CsvKind { series, summary };

/// Reads the header line and reports which schema it names; throws ParseError otherwise.
CsvKind detect_csv_kind(std::string_view header_line);

RealizedICSeries read_series_csv(std::istream& in, std::string model_name = {},
                                 std::optional<std::size_t> universe_size = std::nullopt);

std::vector<ICSummary> read_summary_csv(std::istream& in);

/// The bundled industry-study summary table (22 rows).
std::string_view table5_fixture_csv() noexcept;
std::vector<ICSummary> table5_fixture();

} // namespace ickit
