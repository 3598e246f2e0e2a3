#include "ickit/monitoring.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ickit/error.hpp"
#include "ickit/normal.hpp"

namespace ickit {

namespace {

void require_alpha(double a, const char* what) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError(std::string(what) + " must lie in (0, 1)");
}

double log_choose(std::size_t T, std::size_t j) {
    return std::lgamma(static_cast<double>(T) + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(static_cast<double>(T - j) + 1.0);
}

// Sum of pmf over [from, to], p strictly inside (0, 1).
double pmf_sum(std::size_t from, std::size_t to, std::size_t T, double p) {
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    double total = 0.0;
    for (std::size_t j = from; j <= to; ++j)
        total += std::exp(log_choose(T, j) + static_cast<double>(j) * lp +
                          static_cast<double>(T - j) * lq);
    return total;
}

// P(X >= k) for p in [0, 1].
double tail_closed(std::size_t k, std::size_t T, double p) {
    if (k == 0) return 1.0;
    if (k > T) return 0.0;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    return std::min(1.0, pmf_sum(k, T, T, p));
}

} // namespace

std::string_view sigma_source_name(SigmaSource s) noexcept {
    return s == SigmaSource::historical ? "historical" : "window";
}

std::string_view tail_name(TestTail t) noexcept {
    return t == TestTail::one_sided_lower ? "one_sided_lower" : "two_sided";
}

double avg_ic_critical_value(const MonitoringConfig& cfg, double sigma) {
    require_alpha(cfg.alpha, "alpha");
    if (cfg.window_T == 0) throw DomainError("window_T must be positive");
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    const double tail_prob = cfg.tail == TestTail::two_sided ? 0.5 * cfg.alpha : cfg.alpha;
    const double z = normal_inverse_cdf(1.0 - tail_prob);
    return cfg.rho0 - z * sigma / std::sqrt(static_cast<double>(cfg.window_T));
}

double avg_ic_critical_value(const MonitoringConfig& cfg) {
    if (!(cfg.sigma_ic > 0.0)) throw DomainError("sigma_ic must be positive");
    return avg_ic_critical_value(cfg, cfg.sigma_ic);
}

std::vector<AvgTestOutcome> avg_ic_test(const RealizedICSeries& series, const MonitoringConfig& cfg) {
    const std::size_t T = cfg.window_T;
    if (T == 0) throw DomainError("window_T must be positive");
    if (series.size() < T)
        throw InsufficientHistory("insufficient history: " + std::to_string(series.size()) +
                                  " observations, window needs " + std::to_string(T));
    if (cfg.sigma_source == SigmaSource::window && T < 2)
        throw DomainError("window-based sigma needs window_T >= 2");
    if (cfg.sigma_source == SigmaSource::historical && !(cfg.sigma_ic > 0.0))
        throw DomainError("sigma_ic must be positive");
    require_alpha(cfg.alpha, "alpha");

    const auto values = series.values();
    const auto& obs = series.observations();
    std::vector<AvgTestOutcome> out;
    out.reserve(values.size() - T + 1);
    for (std::size_t end = T; end <= values.size(); ++end) {
        const std::vector<double> window(values.begin() + static_cast<std::ptrdiff_t>(end - T),
                                         values.begin() + static_cast<std::ptrdiff_t>(end));
        AvgTestOutcome o;
        o.period = obs[end - 1].period;
        o.window_mean = sample_mean(window);
        o.sigma_used = cfg.sigma_source == SigmaSource::window ? sample_sd(window) : cfg.sigma_ic;
        o.critical_value = avg_ic_critical_value(cfg, o.sigma_used);
        o.reject = o.window_mean < o.critical_value;
        if (cfg.tail == TestTail::two_sided) {
            o.upper_critical_value = 2.0 * cfg.rho0 - o.critical_value;
            o.reject = o.reject || o.window_mean > *o.upper_critical_value;
        }
        out.push_back(o);
    }
    return out;
}

double binomial_cdf(long k, std::size_t T, double p) {
    require_alpha(p, "binomial p");
    if (k < 0) return 0.0;
    if (static_cast<std::size_t>(k) >= T) return 1.0;
    return std::min(1.0, pmf_sum(0, static_cast<std::size_t>(k), T, p));
}

double binomial_tail(std::size_t k, std::size_t T, double p) {
    require_alpha(p, "binomial p");
    if (k > T) throw DomainError("binomial_tail: k must not exceed T");
    return tail_closed(k, T, p);
}

double binomial_test_alpha(const BinomialTestConfig& cfg) {
    if (cfg.max_rejects_S >= cfg.window_T) throw DomainError("binomial test needs S < T");
    return binomial_tail(cfg.max_rejects_S + 1, cfg.window_T, cfg.alpha_m);
}

double calibrate_alpha_m(std::size_t S, std::size_t T, double target_alpha) {
    if (S >= T) throw DomainError("calibrate_alpha_m: S must be < T");
    require_alpha(target_alpha, "target alpha");
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (tail_closed(S + 1, T, mid) < target_alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double power_avg_test(const PowerQuery& q) {
    if (!(q.sigma_ic > 0.0)) throw DomainError("power: sigma_ic must be positive");
    if (q.window_T == 0) throw DomainError("power: window_T must be positive");
    require_alpha(q.alpha, "alpha");
    const double se = q.sigma_ic / std::sqrt(static_cast<double>(q.window_T));
    return normal_cdf((q.ic0 - q.ic1) / se - normal_inverse_cdf(1.0 - q.alpha));
}

double power_binomial_test(const PowerQuery& q, std::size_t S) {
    if (!(q.sigma_ic > 0.0)) throw DomainError("power: sigma_ic must be positive");
    const double alpha_m = calibrate_alpha_m(S, q.window_T, q.alpha);
    const double p1 = normal_cdf((q.ic0 - q.ic1) / q.sigma_ic - normal_inverse_cdf(1.0 - alpha_m));
    return tail_closed(S + 1, q.window_T, p1);
}

bool MonitoringReport::flags_raised() const noexcept {
    for (const auto& w : windows)
        if (w.flagged) return true;
    for (const auto& a : average_test)
        if (a.reject) return true;
    return false;
}

MonitoringReport monitor(const RealizedICSeries& series, const MonitoringConfig& cfg,
                         const BinomialTestConfig& bin_cfg) {
    if (series.empty()) throw DomainError("monitor: empty series");
    if (!(cfg.sigma_ic > 0.0)) throw DomainError("monitor: sigma_ic must be positive");
    require_alpha(bin_cfg.alpha_m, "alpha_m");
    if (bin_cfg.window_T == 0 || bin_cfg.max_rejects_S >= bin_cfg.window_T)
        throw DomainError("monitor: binomial test needs 0 <= S < T");

    MonitoringReport report;
    report.model_name = series.model_name();
    report.config = cfg;
    report.binomial = bin_cfg;
    report.binomial_size = binomial_test_alpha(bin_cfg);

    try {
        report.average_test = avg_ic_test(series, cfg);
    } catch (const InsufficientHistory& e) {
        report.average_test_note = e.what();
    }

    // Single-observation test each month (window of one period).
    report.monthly_critical_value = cfg.rho0 - normal_inverse_cdf(1.0 - bin_cfg.alpha_m) * cfg.sigma_ic;
    const auto& obs = series.observations();
    report.monthly.reserve(obs.size());
    for (const auto& o : obs)
        report.monthly.push_back({o.period, o.ic, report.monthly_critical_value,
                                  o.ic < report.monthly_critical_value});

    const std::size_t T = bin_cfg.window_T;
    if (obs.size() < T) {
        report.binomial_note = "insufficient history: " + std::to_string(obs.size()) +
                               " observations, binomial window needs " + std::to_string(T);
        return report;
    }
    std::size_t rejects = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        rejects += report.monthly[i].reject;
        if (i >= T) rejects -= report.monthly[i - T].reject;
        if (i + 1 < T) continue;
        report.windows.push_back({obs[i + 1 - T].period, obs[i].period, rejects,
                                  bin_cfg.max_rejects_S, rejects > bin_cfg.max_rejects_S});
    }
    return report;
}

} // namespace ickit
