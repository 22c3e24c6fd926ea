#include "sodkit/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace sodkit::simd::scalar {

PrefixStats prefix_stats(std::span<const double> values) {
    PrefixStats s;
    double p = 0.0;
    for (double v : values) {
        p += v;
        s.min_prefix = std::min(s.min_prefix, p);
        s.max_prefix = std::max(s.max_prefix, p);
        s.max_abs = std::max(s.max_abs, std::fabs(v));
    }
    s.total = p;
    return s;
}

Extrema segment_extrema(const SegmentBlock& block) {
    const std::size_t n = block.width.size();
    Extrema e{block.c0[0], block.c0[0]};
    for (std::size_t i = 0; i < n; ++i) {
        const double h = block.width[i];
        const double a = block.c0[i];
        const double b = block.c1[i];
        const double c = block.c2[i];
        const double end = a + h * (b + h * c);
        double vertex = a;
        if (c != 0.0) {
            const double u = -b / (2.0 * c);
            if (u > 0.0 && u < h) {
                vertex = a + u * (b + u * c);
            }
        }
        e.lo = std::min({e.lo, a, end, vertex});
        e.hi = std::max({e.hi, a, end, vertex});
    }
    return e;
}

} // namespace sodkit::simd::scalar
