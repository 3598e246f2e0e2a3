#include <cmath>

#include "kernels_internal.hpp"

namespace ickit::kernels::detail {

namespace {

constexpr double kC[8] = {
    1.42343711074968357734e0,  4.63033784615654529590e0,  5.76949722146069140550e0,
    3.64784832476320460504e0,  1.27045825245236838258e0,  2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
constexpr double kD[8] = {
    1.0,                       2.05319162663775882187e0,  1.67638483018380384940e0,
    6.89767334985100004550e-1, 1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
constexpr double kE[8] = {
    6.65790464350110377720e0,  5.46378491116411436990e0,  1.78482653991729133580e0,
    2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
constexpr double kF[8] = {
    1.0,                       5.99832206555887937690e-1, 1.36929880922735805310e-1,
    1.48753612908506148525e-2, 7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

inline double horner7(const double (&c)[8], double r) noexcept {
    double acc = c[7];
    for (int i = 6; i >= 0; --i) acc = acc * r + c[i];
    return acc;
}

inline double central(double q) noexcept {
    const double r = kCentralConst - q * q;
    return (q * horner7(kA, r)) / horner7(kB, r);
}

inline double reduce(const double (&acc)[kLanes]) noexcept {
    const double s0 = acc[0] + acc[4];
    const double s1 = acc[1] + acc[5];
    const double s2 = acc[2] + acc[6];
    const double s3 = acc[3] + acc[7];
    return (s0 + s1) + (s2 + s3);
}

void fill_uniform(PhiloxKey key, PhiloxCounter base, std::span<double> out) {
    PhiloxCounter ctr = base;
    std::size_t i = 0;
    for (; i + 1 < out.size(); i += 2) {
        const auto w = philox4x32(ctr, key);
        out[i] = uniform_from_words(w[0], w[1]);
        out[i + 1] = uniform_from_words(w[2], w[3]);
        ++ctr[0];
    }
    if (i < out.size()) {
        const auto w = philox4x32(ctr, key);
        out[i] = uniform_from_words(w[0], w[1]);
    }
}

void uniform_to_normal(std::span<double> values) {
    for (double& v : values) v = ppnd16(v);
}

void mix_correlated(double rho, double resid_scale, std::span<const double> x,
                    std::span<double> noise) {
    for (std::size_t i = 0; i < noise.size(); ++i) {
        const double a = rho * x[i];
        const double b = resid_scale * noise[i];
        noise[i] = a + b;
    }
}

double sum(std::span<const double> values) {
    double acc[kLanes] = {};
    const std::size_t n = values.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes)
        for (std::size_t j = 0; j < kLanes; ++j) acc[j] += values[i + j];
    double total = reduce(acc);
    for (std::size_t i = body; i < n; ++i) total += values[i];
    return total;
}

double centered_sumsq(std::span<const double> values, double mean) {
    double acc[kLanes] = {};
    const std::size_t n = values.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            const double d = values[i + j] - mean;
            acc[j] += d * d;
        }
    }
    double total = reduce(acc);
    for (std::size_t i = body; i < n; ++i) {
        const double d = values[i] - mean;
        total += d * d;
    }
    return total;
}

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                 double mean_x, double mean_y) {
    double axx[kLanes] = {}, ayy[kLanes] = {}, axy[kLanes] = {};
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            const double dx = x[i + j] - mean_x;
            const double dy = y[i + j] - mean_y;
            axx[j] += dx * dx;
            ayy[j] += dy * dy;
            axy[j] += dx * dy;
        }
    }
    CenteredMoments m{reduce(axx), reduce(ayy), reduce(axy)};
    for (std::size_t i = body; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

void standardize(std::span<double> values, double mean, double sd) {
    for (double& v : values) v = (v - mean) / sd;
}

TailSums tail_sums(std::span<const double> x, std::span<const double> y, double bottom_cut,
                   double top_cut) {
    double bot[kLanes] = {}, top[kLanes] = {};
    TailSums out;
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        for (std::size_t j = 0; j < kLanes; ++j) {
            const bool in_bottom = x[i + j] <= bottom_cut;
            const bool in_top = x[i + j] >= top_cut;
            bot[j] += in_bottom ? y[i + j] : 0.0;
            top[j] += in_top ? y[i + j] : 0.0;
            out.bottom_count += in_bottom;
            out.top_count += in_top;
        }
    }
    out.bottom_sum = reduce(bot);
    out.top_sum = reduce(top);
    for (std::size_t i = body; i < n; ++i) {
        if (x[i] <= bottom_cut) {
            out.bottom_sum += y[i];
            ++out.bottom_count;
        }
        if (x[i] >= top_cut) {
            out.top_sum += y[i];
            ++out.top_count;
        }
    }
    return out;
}

} // namespace

double ppnd16_tail(double p) noexcept {
    const double q = p - 0.5;
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = horner7(kC, r) / horner7(kD, r);
    } else {
        r -= 5.0;
        val = horner7(kE, r) / horner7(kF, r);
    }
    return q < 0.0 ? -val : val;
}

double ppnd16(double p) noexcept {
    const double q = p - 0.5;
    if (std::fabs(q) <= kCentralSplit) return central(q);
    return ppnd16_tail(p);
}

const KernelTable kScalarTable{
    Isa::scalar,    &fill_uniform,     &uniform_to_normal, &mix_correlated, &sum,
    &centered_sumsq, &centered_moments, &standardize,      &tail_sums,
};

} // namespace ickit::kernels::detail
