// AVX2 variants. Compiled with per-function target attributes rather than a
// TU-wide -mavx2 so inline helpers pulled in from headers stay baseline code.

#include "kernels_internal.hpp"

#if defined(ICKIT_HAVE_AVX2)

#include <immintrin.h>

#include <bit>
#include <cstdint>

#define ICKIT_AVX2 __attribute__((target("avx2")))

namespace ickit::kernels::detail {

namespace {

ICKIT_AVX2 inline double reduce(__m256d lo, __m256d hi) {
    alignas(32) double s[4];
    _mm256_store_pd(s, _mm256_add_pd(lo, hi));
    return (s[0] + s[1]) + (s[2] + s[3]);
}

ICKIT_AVX2 inline __m256d horner7(const double (&c)[8], __m256d r) {
    __m256d acc = _mm256_set1_pd(c[7]);
    for (int i = 6; i >= 0; --i) acc = _mm256_add_pd(_mm256_mul_pd(acc, r), _mm256_set1_pd(c[i]));
    return acc;
}

// Four Philox blocks at once, one block per 64-bit lane (word in the low half).
ICKIT_AVX2 void philox_x4(__m256i& c0, __m256i& c1, __m256i& c2, __m256i& c3, PhiloxKey key) {
    const __m256i mul0 = _mm256_set1_epi64x(philox_detail::kMul0);
    const __m256i mul1 = _mm256_set1_epi64x(philox_detail::kMul1);
    const __m256i low = _mm256_set1_epi64x(0xFFFFFFFFll);
    for (int round = 0; round < philox_detail::kRounds; ++round) {
        const __m256i p0 = _mm256_mul_epu32(c0, mul0);
        const __m256i p1 = _mm256_mul_epu32(c2, mul1);
        const __m256i k0 = _mm256_set1_epi64x(key[0]);
        const __m256i k1 = _mm256_set1_epi64x(key[1]);
        const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), k0);
        const __m256i n1 = _mm256_and_si256(p1, low);
        const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), k1);
        const __m256i n3 = _mm256_and_si256(p0, low);
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        key[0] += philox_detail::kWeyl0;
        key[1] += philox_detail::kWeyl1;
    }
}

// (hi << 20 | lo >> 12) as an exact double via the 2^52 exponent trick.
ICKIT_AVX2 inline __m256d words_to_uniform(__m256i hi, __m256i lo) {
    const __m256i bits = _mm256_or_si256(_mm256_slli_epi64(hi, 20), _mm256_srli_epi64(lo, 12));
    const __m256i exp52 = _mm256_set1_epi64x(0x4330000000000000ll);
    const __m256d two52 = _mm256_set1_pd(0x1.0p52);
    const __m256d v = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(bits, exp52)), two52);
    return _mm256_mul_pd(_mm256_add_pd(v, _mm256_set1_pd(0.5)), _mm256_set1_pd(0x1.0p-52));
}

ICKIT_AVX2 void fill_uniform(PhiloxKey key, PhiloxCounter base, std::span<double> out) {
    std::size_t i = 0;
    std::uint32_t block = base[0];
    const __m256i lane_offsets = _mm256_setr_epi64x(0, 1, 2, 3);
    for (; i + 8 <= out.size(); i += 8, block += 4) {
        __m256i c0 = _mm256_add_epi64(_mm256_set1_epi64x(block), lane_offsets);
        c0 = _mm256_and_si256(c0, _mm256_set1_epi64x(0xFFFFFFFFll));
        __m256i c1 = _mm256_set1_epi64x(base[1]);
        __m256i c2 = _mm256_set1_epi64x(base[2]);
        __m256i c3 = _mm256_set1_epi64x(base[3]);
        philox_x4(c0, c1, c2, c3, key);
        const __m256d ua = words_to_uniform(c0, c1);
        const __m256d ub = words_to_uniform(c2, c3);
        const __m256d lo = _mm256_unpacklo_pd(ua, ub);
        const __m256d hi = _mm256_unpackhi_pd(ua, ub);
        _mm256_storeu_pd(out.data() + i, _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(out.data() + i + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    if (i < out.size()) {
        PhiloxCounter rest = base;
        rest[0] = block;
        kScalarTable.fill_uniform(key, rest, out.subspan(i));
    }
}

ICKIT_AVX2 void uniform_to_normal(std::span<double> values) {
    const std::size_t n = values.size();
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d split = _mm256_set1_pd(kCentralSplit);
    const __m256d cconst = _mm256_set1_pd(kCentralConst);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        double* p = values.data() + i;
        const __m256d u = _mm256_loadu_pd(p);
        const __m256d q = _mm256_sub_pd(u, half);
        const __m256d r = _mm256_sub_pd(cconst, _mm256_mul_pd(q, q));
        const __m256d z = _mm256_div_pd(_mm256_mul_pd(q, horner7(kA, r)), horner7(kB, r));
        const int tail = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_and_pd(q, abs_mask), split, _CMP_GT_OQ));
        _mm256_storeu_pd(p, z);
        if (tail != 0) {
            alignas(32) double src[4];
            _mm256_store_pd(src, u);
            for (int lanes = tail; lanes != 0; lanes &= lanes - 1) {
                const int lane = std::countr_zero(static_cast<unsigned>(lanes));
                p[lane] = ppnd16_tail(src[lane]);
            }
        }
    }
    for (; i < n; ++i) values[i] = ppnd16(values[i]);
}

ICKIT_AVX2 void mix_correlated(double rho, double resid_scale, std::span<const double> x,
                               std::span<double> noise) {
    const std::size_t n = noise.size();
    const __m256d vr = _mm256_set1_pd(rho);
    const __m256d vs = _mm256_set1_pd(resid_scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_mul_pd(vr, _mm256_loadu_pd(x.data() + i));
        const __m256d b = _mm256_mul_pd(vs, _mm256_loadu_pd(noise.data() + i));
        _mm256_storeu_pd(noise.data() + i, _mm256_add_pd(a, b));
    }
    for (; i < n; ++i) {
        const double a = rho * x[i];
        const double b = resid_scale * noise[i];
        noise[i] = a + b;
    }
}

ICKIT_AVX2 double sum(std::span<const double> values) {
    const std::size_t n = values.size();
    const std::size_t body = n - n % kLanes;
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        lo = _mm256_add_pd(lo, _mm256_loadu_pd(values.data() + i));
        hi = _mm256_add_pd(hi, _mm256_loadu_pd(values.data() + i + 4));
    }
    double total = reduce(lo, hi);
    for (std::size_t i = body; i < n; ++i) total += values[i];
    return total;
}

ICKIT_AVX2 double centered_sumsq(std::span<const double> values, double mean) {
    const std::size_t n = values.size();
    const std::size_t body = n - n % kLanes;
    const __m256d m = _mm256_set1_pd(mean);
    __m256d lo = _mm256_setzero_pd();
    __m256d hi = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(values.data() + i), m);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(values.data() + i + 4), m);
        lo = _mm256_add_pd(lo, _mm256_mul_pd(d0, d0));
        hi = _mm256_add_pd(hi, _mm256_mul_pd(d1, d1));
    }
    double total = reduce(lo, hi);
    for (std::size_t i = body; i < n; ++i) {
        const double d = values[i] - mean;
        total += d * d;
    }
    return total;
}

ICKIT_AVX2 CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y,
                                            double mean_x, double mean_y) {
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    const __m256d mx = _mm256_set1_pd(mean_x);
    const __m256d my = _mm256_set1_pd(mean_y);
    __m256d xx0 = _mm256_setzero_pd(), xx1 = _mm256_setzero_pd();
    __m256d yy0 = _mm256_setzero_pd(), yy1 = _mm256_setzero_pd();
    __m256d xy0 = _mm256_setzero_pd(), xy1 = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d dx0 = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i), mx);
        const __m256d dx1 = _mm256_sub_pd(_mm256_loadu_pd(x.data() + i + 4), mx);
        const __m256d dy0 = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i), my);
        const __m256d dy1 = _mm256_sub_pd(_mm256_loadu_pd(y.data() + i + 4), my);
        xx0 = _mm256_add_pd(xx0, _mm256_mul_pd(dx0, dx0));
        xx1 = _mm256_add_pd(xx1, _mm256_mul_pd(dx1, dx1));
        yy0 = _mm256_add_pd(yy0, _mm256_mul_pd(dy0, dy0));
        yy1 = _mm256_add_pd(yy1, _mm256_mul_pd(dy1, dy1));
        xy0 = _mm256_add_pd(xy0, _mm256_mul_pd(dx0, dy0));
        xy1 = _mm256_add_pd(xy1, _mm256_mul_pd(dx1, dy1));
    }
    CenteredMoments m{reduce(xx0, xx1), reduce(yy0, yy1), reduce(xy0, xy1)};
    for (std::size_t i = body; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        m.sxx += dx * dx;
        m.syy += dy * dy;
        m.sxy += dx * dy;
    }
    return m;
}

ICKIT_AVX2 void standardize(std::span<double> values, double mean, double sd) {
    const std::size_t n = values.size();
    const __m256d m = _mm256_set1_pd(mean);
    const __m256d s = _mm256_set1_pd(sd);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        double* p = values.data() + i;
        _mm256_storeu_pd(p, _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(p), m), s));
    }
    for (; i < n; ++i) values[i] = (values[i] - mean) / sd;
}

ICKIT_AVX2 TailSums tail_sums(std::span<const double> x, std::span<const double> y,
                              double bottom_cut, double top_cut) {
    const std::size_t n = x.size();
    const std::size_t body = n - n % kLanes;
    const __m256d bc = _mm256_set1_pd(bottom_cut);
    const __m256d tc = _mm256_set1_pd(top_cut);
    __m256d b0 = _mm256_setzero_pd(), b1 = _mm256_setzero_pd();
    __m256d t0 = _mm256_setzero_pd(), t1 = _mm256_setzero_pd();
    TailSums out;
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d x0 = _mm256_loadu_pd(x.data() + i);
        const __m256d x1 = _mm256_loadu_pd(x.data() + i + 4);
        const __m256d y0 = _mm256_loadu_pd(y.data() + i);
        const __m256d y1 = _mm256_loadu_pd(y.data() + i + 4);
        const __m256d mb0 = _mm256_cmp_pd(x0, bc, _CMP_LE_OQ);
        const __m256d mb1 = _mm256_cmp_pd(x1, bc, _CMP_LE_OQ);
        const __m256d mt0 = _mm256_cmp_pd(x0, tc, _CMP_GE_OQ);
        const __m256d mt1 = _mm256_cmp_pd(x1, tc, _CMP_GE_OQ);
        b0 = _mm256_add_pd(b0, _mm256_and_pd(mb0, y0));
        b1 = _mm256_add_pd(b1, _mm256_and_pd(mb1, y1));
        t0 = _mm256_add_pd(t0, _mm256_and_pd(mt0, y0));
        t1 = _mm256_add_pd(t1, _mm256_and_pd(mt1, y1));
        out.bottom_count += static_cast<std::size_t>(
            std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mb0))) +
            std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mb1))));
        out.top_count += static_cast<std::size_t>(
            std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mt0))) +
            std::popcount(static_cast<unsigned>(_mm256_movemask_pd(mt1))));
    }
    out.bottom_sum = reduce(b0, b1);
    out.top_sum = reduce(t0, t1);
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

const KernelTable kAvx2Table{
    Isa::avx2,      &fill_uniform,     &uniform_to_normal, &mix_correlated, &sum,
    &centered_sumsq, &centered_moments, &standardize,      &tail_sums,
};

} // namespace ickit::kernels::detail

#endif
