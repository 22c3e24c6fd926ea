#include "sodkit/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace sodkit::simd {

namespace {

bool cpu_has_avx2() {
#if defined(SODKIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level detect() {
    if (const char* env = std::getenv("SODKIT_SIMD")) {
        const std::string want(env);
        if (want == "scalar") {
            return Level::scalar;
        }
        if (want == "avx2") {
            if (!cpu_has_avx2()) {
                throw std::runtime_error("SODKIT_SIMD=avx2 requested but AVX2 is unavailable");
            }
            return Level::avx2;
        }
        throw std::runtime_error("SODKIT_SIMD: unknown level '" + want + "'");
    }
    return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& current() {
    static std::atomic<Level> level{detect()};
    return level;
}

} // namespace

Level active_level() {
    return current().load(std::memory_order_relaxed);
}

bool level_available(Level level) {
    return level == Level::scalar || (level == Level::avx2 && cpu_has_avx2());
}

void set_level(Level level) {
    if (!level_available(level)) {
        throw std::runtime_error("SIMD level unavailable: " + std::string(level_name(level)));
    }
    current().store(level, std::memory_order_relaxed);
}

std::string_view level_name(Level level) {
    switch (level) {
    case Level::scalar:
        return "scalar";
    case Level::avx2:
        return "avx2";
    }
    return "unknown";
}

PrefixStats prefix_stats(std::span<const double> values) {
#if defined(SODKIT_HAVE_AVX2)
    if (active_level() == Level::avx2) {
        return avx2::prefix_stats(values);
    }
#endif
    return scalar::prefix_stats(values);
}

Extrema segment_extrema(const SegmentBlock& block) {
    if (block.width.empty()) {
        throw std::invalid_argument("segment_extrema: empty block");
    }
#if defined(SODKIT_HAVE_AVX2)
    if (active_level() == Level::avx2) {
        return avx2::segment_extrema(block);
    }
#endif
    return scalar::segment_extrema(block);
}

} // namespace sodkit::simd
