#include "sodkit/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace sodkit::simd::avx2 {

namespace {

// Inclusive prefix sum of the four lanes: [a, a+b, a+b+c, a+b+c+d].
inline __m256d lane_scan(__m256d x) {
    const __m256d zero = _mm256_setzero_pd();
    // [0, a, b, c]
    __m256d s1 = _mm256_blend_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(2, 1, 0, 0)), zero, 0b0001);
    x = _mm256_add_pd(x, s1);
    // [0, 0, x0, x1]
    __m256d s2 = _mm256_blend_pd(_mm256_permute4x64_pd(x, _MM_SHUFFLE(1, 0, 0, 0)), zero, 0b0011);
    return _mm256_add_pd(x, s2);
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

} // namespace

PrefixStats prefix_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    const double* x = values.data();
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

    __m256d carry = _mm256_setzero_pd();
    __m256d vmin = _mm256_setzero_pd();
    __m256d vmax = _mm256_setzero_pd();
    __m256d vabs = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d p = _mm256_add_pd(lane_scan(v), carry);
        vmin = _mm256_min_pd(vmin, p);
        vmax = _mm256_max_pd(vmax, p);
        vabs = _mm256_max_pd(vabs, _mm256_and_pd(v, absmask));
        // broadcast the last lane as the carry into the next block
        carry = _mm256_permute4x64_pd(p, _MM_SHUFFLE(3, 3, 3, 3));
    }

    PrefixStats s;
    s.min_prefix = hmin(vmin);
    s.max_prefix = hmax(vmax);
    s.max_abs = hmax(vabs);
    double p = _mm256_cvtsd_f64(carry);
    for (; i < n; ++i) {
        p += x[i];
        s.min_prefix = std::min(s.min_prefix, p);
        s.max_prefix = std::max(s.max_prefix, p);
        s.max_abs = std::max(s.max_abs, std::fabs(x[i]));
    }
    s.total = p;
    return s;
}

Extrema segment_extrema(const SegmentBlock& block) {
    const std::size_t n = block.width.size();
    const double* hw = block.width.data();
    const double* c0 = block.c0.data();
    const double* c1 = block.c1.data();
    const double* c2 = block.c2.data();

    const __m256d zero = _mm256_setzero_pd();
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d signbit = _mm256_set1_pd(-0.0);

    __m256d vlo = _mm256_set1_pd(c0[0]);
    __m256d vhi = vlo;

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d h = _mm256_loadu_pd(hw + i);
        const __m256d a = _mm256_loadu_pd(c0 + i);
        const __m256d b = _mm256_loadu_pd(c1 + i);
        const __m256d c = _mm256_loadu_pd(c2 + i);

        const __m256d end = _mm256_add_pd(a, _mm256_mul_pd(h, _mm256_add_pd(b, _mm256_mul_pd(h, c))));

        // Lanes with c == 0 produce inf/nan here and are masked out below.
        const __m256d u = _mm256_div_pd(_mm256_xor_pd(b, signbit), _mm256_mul_pd(two, c));
        const __m256d inside = _mm256_and_pd(
            _mm256_and_pd(_mm256_cmp_pd(c, zero, _CMP_NEQ_OQ), _mm256_cmp_pd(u, zero, _CMP_GT_OQ)),
            _mm256_cmp_pd(u, h, _CMP_LT_OQ));
        const __m256d vtx = _mm256_add_pd(a, _mm256_mul_pd(u, _mm256_add_pd(b, _mm256_mul_pd(u, c))));
        const __m256d vertex = _mm256_blendv_pd(a, vtx, inside);

        vlo = _mm256_min_pd(vlo, _mm256_min_pd(a, _mm256_min_pd(end, vertex)));
        vhi = _mm256_max_pd(vhi, _mm256_max_pd(a, _mm256_max_pd(end, vertex)));
    }

    Extrema e{hmin(vlo), hmax(vhi)};
    if (i < n) {
        const SegmentBlock tail{block.width.subspan(i), block.c0.subspan(i), block.c1.subspan(i),
                                block.c2.subspan(i)};
        const Extrema t = scalar::segment_extrema(tail);
        e.lo = std::min(e.lo, t.lo);
        e.hi = std::max(e.hi, t.hi);
    }
    return e;
}

} // namespace sodkit::simd::avx2
