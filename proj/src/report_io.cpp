#include "ickit/report_io.hpp"

#include <fmt/format.h>

#include <ostream>

#include "ickit/error.hpp"
#include "json.hpp"

namespace ickit {

using nlohmann::ordered_json;

namespace {

YearMonth period_from(const ordered_json& j) {
    const auto text = j.get<std::string>();
    const auto ym = YearMonth::parse(text);
    if (!ym) throw ParseError(0, "invalid period '" + text + "'");
    return *ym;
}

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

template <class T>
std::optional<T> optional_from(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

std::vector<Table> report_tables(const MonitoringReport& r) {
    Table summary;
    summary.id = "summary";
    summary.title = "Monitoring summary" + (r.model_name.empty() ? "" : " for " + r.model_name);
    summary.columns = {{"key", "Setting", ColumnStyle::text, 0}, {"value", "Value", ColumnStyle::fixed, 4}};
    summary.rows = {
        {std::string("rho0"), r.config.rho0},
        {std::string("sigma_ic"), r.config.sigma_ic},
        {std::string("sigma_source"), std::string(sigma_source_name(r.config.sigma_source))},
        {std::string("window_T"), static_cast<long long>(r.config.window_T)},
        {std::string("alpha"), r.config.alpha},
        {std::string("tail"), std::string(tail_name(r.config.tail))},
        {std::string("binomial_window_T"), static_cast<long long>(r.binomial.window_T)},
        {std::string("max_rejects_S"), static_cast<long long>(r.binomial.max_rejects_S)},
        {std::string("alpha_m"), r.binomial.alpha_m},
        {std::string("monthly_critical_value"), r.monthly_critical_value},
        {std::string("binomial_size"), r.binomial_size},
        {std::string("flags_raised"), std::string(r.flags_raised() ? "yes" : "no")},
    };
    if (r.average_test_note) summary.notes.push_back("Average IC test: " + *r.average_test_note);
    if (r.binomial_note) summary.notes.push_back("Binomial test: " + *r.binomial_note);

    Table avg;
    avg.id = "average_test";
    avg.title = "Average IC test";
    avg.columns = {{"period", "Window end", ColumnStyle::text, 0},
                   {"window_mean", "Mean IC", ColumnStyle::fixed, 4},
                   {"sigma_used", "sigma", ColumnStyle::fixed, 4},
                   {"critical_value", "Critical value", ColumnStyle::fixed, 4},
                   {"reject", "Reject", ColumnStyle::text, 0}};
    for (const auto& o : r.average_test)
        avg.rows.push_back({o.period.str(), o.window_mean, o.sigma_used, o.critical_value,
                            std::string(o.reject ? "yes" : "no")});

    Table bin;
    bin.id = "binomial_test";
    bin.title = "Binomial test windows";
    bin.columns = {{"first", "From", ColumnStyle::text, 0},
                   {"last", "To", ColumnStyle::text, 0},
                   {"rejects", "Monthly rejects", ColumnStyle::integer, 0},
                   {"max_rejects", "Max acceptable", ColumnStyle::integer, 0},
                   {"flagged", "Flagged", ColumnStyle::text, 0}};
    for (const auto& w : r.windows)
        bin.rows.push_back({w.first.str(), w.last.str(), static_cast<long long>(w.rejects),
                            static_cast<long long>(w.max_rejects), std::string(w.flagged ? "yes" : "no")});
    return {summary, avg, bin};
}

} // namespace

std::string report_to_json(const MonitoringReport& r) {
    ordered_json j;
    j["model_name"] = r.model_name;
    j["config"] = {{"rho0", r.config.rho0},
                   {"sigma_ic", r.config.sigma_ic},
                   {"window_T", r.config.window_T},
                   {"alpha", r.config.alpha},
                   {"sigma_source", sigma_source_name(r.config.sigma_source)},
                   {"tail", tail_name(r.config.tail)}};
    j["binomial_config"] = {{"max_rejects_S", r.binomial.max_rejects_S},
                            {"window_T", r.binomial.window_T},
                            {"alpha_m", r.binomial.alpha_m}};
    j["monthly_critical_value"] = r.monthly_critical_value;
    j["binomial_size"] = r.binomial_size;
    j["flags_raised"] = r.flags_raised();
    j["average_test"] = ordered_json::array();
    for (const auto& o : r.average_test)
        j["average_test"].push_back({{"period", o.period.str()},
                                     {"window_mean", o.window_mean},
                                     {"sigma_used", o.sigma_used},
                                     {"critical_value", o.critical_value},
                                     {"upper_critical_value", optional_json(o.upper_critical_value)},
                                     {"reject", o.reject}});
    j["average_test_note"] = optional_json(r.average_test_note);
    j["monthly"] = ordered_json::array();
    for (const auto& m : r.monthly)
        j["monthly"].push_back({{"period", m.period.str()},
                                {"ic", m.ic},
                                {"critical_value", m.critical_value},
                                {"reject", m.reject}});
    j["windows"] = ordered_json::array();
    for (const auto& w : r.windows)
        j["windows"].push_back({{"first", w.first.str()},
                                {"last", w.last.str()},
                                {"rejects", w.rejects},
                                {"max_rejects", w.max_rejects},
                                {"flagged", w.flagged}});
    j["binomial_note"] = optional_json(r.binomial_note);
    return j.dump(2);
}

MonitoringReport report_from_json(std::string_view text) {
    try {
        const auto j = ordered_json::parse(text);
        MonitoringReport r;
        r.model_name = j.at("model_name").get<std::string>();
        const auto& c = j.at("config");
        r.config.rho0 = c.at("rho0").get<double>();
        r.config.sigma_ic = c.at("sigma_ic").get<double>();
        r.config.window_T = c.at("window_T").get<std::size_t>();
        r.config.alpha = c.at("alpha").get<double>();
        r.config.sigma_source =
            c.at("sigma_source").get<std::string>() == "window" ? SigmaSource::window : SigmaSource::historical;
        r.config.tail = c.at("tail").get<std::string>() == "two_sided" ? TestTail::two_sided
                                                                       : TestTail::one_sided_lower;
        const auto& b = j.at("binomial_config");
        r.binomial.max_rejects_S = b.at("max_rejects_S").get<std::size_t>();
        r.binomial.window_T = b.at("window_T").get<std::size_t>();
        r.binomial.alpha_m = b.at("alpha_m").get<double>();
        r.monthly_critical_value = j.at("monthly_critical_value").get<double>();
        r.binomial_size = j.at("binomial_size").get<double>();
        for (const auto& o : j.at("average_test"))
            r.average_test.push_back({period_from(o.at("period")), o.at("window_mean").get<double>(),
                                      o.at("sigma_used").get<double>(), o.at("critical_value").get<double>(),
                                      optional_from<double>(o.at("upper_critical_value")),
                                      o.at("reject").get<bool>()});
        r.average_test_note = optional_from<std::string>(j.at("average_test_note"));
        for (const auto& m : j.at("monthly"))
            r.monthly.push_back({period_from(m.at("period")), m.at("ic").get<double>(),
                                 m.at("critical_value").get<double>(), m.at("reject").get<bool>()});
        for (const auto& w : j.at("windows"))
            r.windows.push_back({period_from(w.at("first")), period_from(w.at("last")),
                                 w.at("rejects").get<std::size_t>(), w.at("max_rejects").get<std::size_t>(),
                                 w.at("flagged").get<bool>()});
        r.binomial_note = optional_from<std::string>(j.at("binomial_note"));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("malformed monitoring report: ") + e.what());
    }
}

void write_report(std::ostream& out, const MonitoringReport& report, OutputFormat format) {
    if (format == OutputFormat::json) {
        out << report_to_json(report) << '\n';
        return;
    }
    render(out, report_tables(report), format);
}

} // namespace ickit
