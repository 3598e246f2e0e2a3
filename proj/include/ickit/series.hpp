#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ickit {

struct YearMonth {
    int year = 1970;
    int month = 1;  // 1..12

    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;

    /// Parses "YYYY-MM"; nullopt on malformed text or an out-of-range month.
    static std::optional<YearMonth> parse(std::string_view text);
    std::string str() const;
    YearMonth next() const noexcept;
};

struct ICObservation {
    YearMonth period;
    double ic = 0.0;

    friend bool operator==(const ICObservation&, const ICObservation&) = default;
};

/// Monthly realized ICs of one model. Periods are strictly increasing.
class RealizedICSeries {
public:
    RealizedICSeries() = default;

    /// Throws DomainError if periods are not strictly increasing or an IC is
    /// outside [-1, 1].
    RealizedICSeries(std::string model_name, std::optional<std::size_t> universe_size,
                     std::vector<ICObservation> observations);

    const std::string& model_name() const noexcept { return model_name_; }
    std::optional<std::size_t> universe_size() const noexcept { return universe_size_; }
    const std::vector<ICObservation>& observations() const noexcept { return observations_; }
    std::size_t size() const noexcept { return observations_.size(); }
    bool empty() const noexcept { return observations_.empty(); }

    std::vector<double> values() const;

private:
    std::string model_name_;
    std::optional<std::size_t> universe_size_;
    std::vector<ICObservation> observations_;
};

/// Published summary of a realized-IC series.
struct ICSummary {
    std::string model_name;
    std::size_t universe_size = 0;
    double mean_ic = 0.0;
    double std_ic = 0.0;
    std::string study_period;
};

double sample_mean(const std::vector<double>& v);

/// n - 1 convention; requires at least two values.
double sample_sd(const std::vector<double>& v);

} // namespace ickit
