#pragma once

// Data-parallel inner loops shared by the norms and the signal module.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 variant. The public entry points dispatch at runtime
// to the best level the CPU offers; SODKIT_SIMD=scalar|avx2 in the
// environment overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace sodkit::simd {

enum class Level { scalar, avx2 };

/// Prefix-walk summary of an amplitude sequence. The walk starts at 0, so
/// min_prefix <= 0 <= max_prefix always holds.
struct PrefixStats {
    double min_prefix = 0.0;
    double max_prefix = 0.0;
    double total = 0.0;
    double max_abs = 0.0;
};

/// Piecewise-quadratic segments in structure-of-arrays form. Segment i spans
/// u in [0, width[i]] and evaluates c0 + u * (c1 + u * c2).
struct SegmentBlock {
    std::span<const double> width;
    std::span<const double> c0;
    std::span<const double> c1;
    std::span<const double> c2;
};

struct Extrema {
    double lo = 0.0;
    double hi = 0.0;
};

Level active_level();
bool level_available(Level level);
/// Forces a level (tests and benchmarks). Throws if unavailable.
void set_level(Level level);
std::string_view level_name(Level level);

PrefixStats prefix_stats(std::span<const double> values);
/// Exact min/max over all segments (endpoints plus interior vertices).
/// Requires at least one segment.
Extrema segment_extrema(const SegmentBlock& block);

namespace scalar {
PrefixStats prefix_stats(std::span<const double> values);
Extrema segment_extrema(const SegmentBlock& block);
} // namespace scalar

#if defined(SODKIT_HAVE_AVX2)
namespace avx2 {
PrefixStats prefix_stats(std::span<const double> values);
Extrema segment_extrema(const SegmentBlock& block);
} // namespace avx2
#endif

} // namespace sodkit::simd
