#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ickit/monitoring.hpp"
#include "ickit/tables.hpp"

namespace ickit {

/// Full-precision JSON; report_from_json(report_to_json(r)) == r.
std::string report_to_json(const MonitoringReport& report);

/// Throws ParseError (line 0) on malformed documents.
MonitoringReport report_from_json(std::string_view json);

void write_report(std::ostream& out, const MonitoringReport& report, OutputFormat format);

} // namespace ickit
