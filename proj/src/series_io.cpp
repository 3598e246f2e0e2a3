#include "ickit/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "ickit/csv_io.hpp"
#include "ickit/error.hpp"

namespace ickit {

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    YearMonth ym;
    auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, ym.year);
    auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, ym.month);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != text.data() + 4 || p2 != text.data() + 7)
        return std::nullopt;
    if (ym.month < 1 || ym.month > 12) return std::nullopt;
    return ym;
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::next() const noexcept {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

RealizedICSeries::RealizedICSeries(std::string model_name, std::optional<std::size_t> universe_size,
                                   std::vector<ICObservation> observations)
    : model_name_(std::move(model_name)), universe_size_(universe_size),
      observations_(std::move(observations)) {
    for (std::size_t i = 0; i < observations_.size(); ++i) {
        const double ic = observations_[i].ic;
        if (!(ic >= -1.0 && ic <= 1.0))
            throw DomainError("realized IC outside [-1, 1] at " + observations_[i].period.str());
        if (i > 0 && !(observations_[i - 1].period < observations_[i].period))
            throw DomainError("periods must be strictly increasing (at " +
                              observations_[i].period.str() + ")");
    }
}

std::vector<double> RealizedICSeries::values() const {
    std::vector<double> v;
    v.reserve(observations_.size());
    for (const auto& o : observations_) v.push_back(o.ic);
    return v;
}

double sample_mean(const std::vector<double>& v) {
    if (v.empty()) throw DomainError("sample_mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) throw DomainError("sample_sd: need at least 2 values");
    const double m = sample_mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

} // namespace ickit

// ---------------------------------------------------------------------------
// CSV

namespace ickit {

namespace detail {
extern const std::string_view kTable5Csv;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    for (;;) {
        const auto comma = line.find(',');
        out.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        line.remove_prefix(comma + 1);
    }
    return out;
}

double parse_real(std::string_view text, std::size_t line, const char* field) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || !std::isfinite(v))
        throw ParseError(line, std::string("invalid number for ") + field + ": '" + std::string(text) + "'");
    return v;
}

std::size_t parse_count(std::string_view text, std::size_t line, const char* field) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size())
        throw ParseError(line, std::string("invalid integer for ") + field + ": '" + std::string(text) + "'");
    return v;
}

// Reads lines, strips a UTF-8 BOM on the first one, skips blank lines.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++number_;
            if (number_ == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
            if (!trim(line).empty()) return true;
        }
        return false;
    }

    std::size_t number() const noexcept { return number_; }

private:
    std::istream& in_;
    std::size_t number_ = 0;
};

void expect_header(LineReader& reader, CsvKind kind) {
    std::string header;
    if (!reader.next(header)) throw ParseError(1, "empty input (missing header)");
    if (detect_csv_kind(header) != kind)
        throw ParseError(reader.number(), "unexpected header for this input mode: '" + header + "'");
}

} // namespace

CsvKind detect_csv_kind(std::string_view header_line) {
    const auto cols = split(header_line);
    if (cols.size() == 2 && cols[0] == "date" && cols[1] == "ic") return CsvKind::series;
    if ((cols.size() == 4 || cols.size() == 5) && cols[0] == "model_name" &&
        cols[1] == "universe_size" && cols[2] == "mean_ic" && cols[3] == "std_ic" &&
        (cols.size() == 4 || cols[4] == "study_period"))
        return CsvKind::summary;
    throw ParseError(1, "unrecognized header '" + std::string(trim(header_line)) +
                            "' (expected 'date,ic' or 'model_name,universe_size,mean_ic,std_ic')");
}

RealizedICSeries read_series_csv(std::istream& in, std::string model_name,
                                 std::optional<std::size_t> universe_size) {
    LineReader reader(in);
    expect_header(reader, CsvKind::series);
    std::vector<ICObservation> obs;
    std::string line;
    while (reader.next(line)) {
        const auto cols = split(line);
        if (cols.size() != 2) throw ParseError(reader.number(), "expected 2 columns");
        const auto period = YearMonth::parse(cols[0]);
        if (!period) throw ParseError(reader.number(), "invalid date '" + std::string(cols[0]) + "' (want YYYY-MM)");
        const double ic = parse_real(cols[1], reader.number(), "ic");
        if (ic < -1.0 || ic > 1.0) throw ParseError(reader.number(), "ic outside [-1, 1]");
        if (!obs.empty() && !(obs.back().period < *period))
            throw ParseError(reader.number(), "dates must be strictly increasing");
        obs.push_back({*period, ic});
    }
    return RealizedICSeries(std::move(model_name), universe_size, std::move(obs));
}

std::vector<ICSummary> read_summary_csv(std::istream& in) {
    LineReader reader(in);
    expect_header(reader, CsvKind::summary);
    std::vector<ICSummary> rows;
    std::string line;
    while (reader.next(line)) {
        const auto cols = split(line);
        if (cols.size() != 4 && cols.size() != 5) throw ParseError(reader.number(), "expected 4 or 5 columns");
        ICSummary row;
        row.model_name = std::string(cols[0]);
        row.universe_size = parse_count(cols[1], reader.number(), "universe_size");
        row.mean_ic = parse_real(cols[2], reader.number(), "mean_ic");
        row.std_ic = parse_real(cols[3], reader.number(), "std_ic");
        if (cols.size() == 5) row.study_period = std::string(cols[4]);
        if (row.universe_size <= 3) throw ParseError(reader.number(), "universe_size must exceed 3");
        if (row.std_ic < 0.0) throw ParseError(reader.number(), "std_ic must be >= 0");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string_view table5_fixture_csv() noexcept { return detail::kTable5Csv; }

std::vector<ICSummary> table5_fixture() {
    std::istringstream in{std::string(detail::kTable5Csv)};
    return read_summary_csv(in);
}

} // namespace ickit
