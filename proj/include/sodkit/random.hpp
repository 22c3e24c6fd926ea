#pragma once

#include <cstdint>
#include <random>

namespace sodkit {

/// Seeded generator with a portable uniform draw (std distributions differ
/// between standard libraries, this does not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }
    bool coin() { return (engine_() >> 63) != 0; }

    /// Independent stream for trial `index` of a campaign seeded with `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 e(seq);
        return Rng(e());
    }

private:
    std::mt19937_64 engine_;
};

} // namespace sodkit
