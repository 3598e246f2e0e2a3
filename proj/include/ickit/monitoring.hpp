#pragma once

// Ongoing monitoring of realized ICs with two procedures:
//  * average-IC test: the trailing-window mean IC against a one-sided lower
//    critical value rho0 - z(1-alpha) sigma / sqrt(T);
//  * binomial test: single-month tests at level alpha_m, flagging a window of
//    T months when more than S of them reject.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ickit/series.hpp"

namespace ickit {

enum class SigmaSource { historical, window };
enum class TestTail { one_sided_lower, two_sided };

std::string_view sigma_source_name(SigmaSource s) noexcept;
std::string_view tail_name(TestTail t) noexcept;

struct MonitoringConfig {
    double rho0 = 0.0;
    double sigma_ic = 0.0;  // per-period sd; used when sigma_source == historical
    std::size_t window_T = 12;
    double alpha = 0.05;
    SigmaSource sigma_source = SigmaSource::historical;
    TestTail tail = TestTail::one_sided_lower;

    friend bool operator==(const MonitoringConfig&, const MonitoringConfig&) = default;
};

struct BinomialTestConfig {
    std::size_t max_rejects_S = 2;
    std::size_t window_T = 12;
    double alpha_m = 0.05;

    friend bool operator==(const BinomialTestConfig&, const BinomialTestConfig&) = default;
};

struct PowerQuery {
    double ic0 = 0.0;
    double ic1 = 0.0;
    double sigma_ic = 0.0;
    std::size_t window_T = 12;
    double alpha = 0.05;  // overall size of the test
};

/// Lower critical value for the trailing mean using cfg.sigma_ic.
double avg_ic_critical_value(const MonitoringConfig& cfg);

/// Lower critical value for an explicit per-period sd.
double avg_ic_critical_value(const MonitoringConfig& cfg, double sigma);

struct AvgTestOutcome {
    YearMonth period;  // last month of the window
    double window_mean = 0.0;
    double sigma_used = 0.0;
    double critical_value = 0.0;
    std::optional<double> upper_critical_value;  // two-sided mode only
    bool reject = false;

    friend bool operator==(const AvgTestOutcome&, const AvgTestOutcome&) = default;
};

/// One outcome per period that closes a full trailing window.
/// Throws InsufficientHistory if the series is shorter than window_T.
std::vector<AvgTestOutcome> avg_ic_test(const RealizedICSeries& series, const MonitoringConfig& cfg);

/// P(X <= k), X ~ Binomial(T, p). k < 0 gives 0, k >= T gives 1.
double binomial_cdf(long k, std::size_t T, double p);

/// P(X >= k), X ~ Binomial(T, p); 0 <= k <= T, 0 < p < 1.
double binomial_tail(std::size_t k, std::size_t T, double p);

/// Size of the binomial procedure: P(more than S rejects) under the null.
double binomial_test_alpha(const BinomialTestConfig& cfg);

/// Monthly level alpha_m at which binomial_test_alpha(S, T, alpha_m) == target_alpha.
double calibrate_alpha_m(std::size_t S, std::size_t T, double target_alpha);

double power_avg_test(const PowerQuery& q);

/// Power of the binomial procedure with alpha_m calibrated to q.alpha.
double power_binomial_test(const PowerQuery& q, std::size_t S);

struct MonthlyOutcome {
    YearMonth period;
    double ic = 0.0;
    double critical_value = 0.0;
    bool reject = false;

    friend bool operator==(const MonthlyOutcome&, const MonthlyOutcome&) = default;
};

struct BinomialWindow {
    YearMonth first;
    YearMonth last;
    std::size_t rejects = 0;
    std::size_t max_rejects = 0;
    bool flagged = false;

    friend bool operator==(const BinomialWindow&, const BinomialWindow&) = default;
};

struct MonitoringReport {
    std::string model_name;
    MonitoringConfig config;
    BinomialTestConfig binomial;
    double monthly_critical_value = 0.0;
    double binomial_size = 0.0;

    std::vector<AvgTestOutcome> average_test;
    std::optional<std::string> average_test_note;  // e.g. insufficient history
    std::vector<MonthlyOutcome> monthly;
    std::vector<BinomialWindow> windows;
    std::optional<std::string> binomial_note;

    bool flags_raised() const noexcept;

    friend bool operator==(const MonitoringReport&, const MonitoringReport&) = default;
};

/// Runs both procedures. A sub-test without enough history is reported in its
/// note rather than failing the whole run. Throws DomainError on an empty series.
MonitoringReport monitor(const RealizedICSeries& series, const MonitoringConfig& cfg,
                         const BinomialTestConfig& bin_cfg);

} // namespace ickit
