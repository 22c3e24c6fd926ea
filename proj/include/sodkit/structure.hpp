#pragma once

#include "sodkit/events.hpp"
#include "sodkit/norms.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace sodkit {

/// Event values on a fixed support grid, zeros kept in place.
struct DenseEvents {
    double horizon = 1.0;
    std::vector<double> times;
    std::vector<double> values;

    EventSequence sparse() const;
    std::size_t nonzero_count() const;
    bool operator==(const DenseEvents&) const = default;
};

DenseEvents to_dense(const EventSequence& eta);

struct MmdInterval {
    double a = 0.0;
    double b = 0.0;
    /// Event indices of a and b.
    std::size_t first = 0;
    std::size_t last = 0;
    /// D_m, the sum over [a, b].
    double partial_sum = 0.0;
};

struct MmdDecomposition {
    double discrepancy = 0.0;
    std::vector<MmdInterval> intervals;
};

/// Minimal intervals of maximal discrepancy. Each b_{m+1} is searched among
/// the events strictly after b_m.
MmdDecomposition mmd_intervals(const EventSequence& eta);

struct ChainDecomposition {
    /// stages[0] is zero, stages.back() is the input; all on the input grid.
    std::vector<DenseEvents> stages;
};

/// Unit amplitudes (+-1) only.
ChainDecomposition chain_decompose(const EventSequence& eta);

enum class Pattern { plus_minus, minus_plus };

/// Applies T_p up to n times (stops early at the fixpoint). One application
/// zeroes the leftmost (+1, 0.., -1) (resp. (-1, 0.., +1)) pair.
DenseEvents transcribe(const DenseEvents& eta, Pattern p,
                       std::size_t n = std::numeric_limits<std::size_t>::max());
/// Number of applications until the fixpoint.
std::size_t transcription_depth(const DenseEvents& eta, Pattern p);

/// Index pairs zeroed by successive applications of T_p, in order.
std::vector<std::pair<std::size_t, std::size_t>> transcription_pairs(std::span<const double> values, Pattern p);

struct SweepResult {
    double value = 0.0;
    /// Witness: event index interval [first, last] and the exponents m
    /// (plus_minus, applied first) and n (minus_plus).
    std::size_t first = 0;
    std::size_t last = 0;
    std::size_t m = 0;
    std::size_t n = 0;
};

inline constexpr std::size_t kSweepLimit = 300;

/// max over index intervals I and exponents n, m up to the fixpoint of
/// ||T^n_{-+}(T^m_{+-}(eta|_I))||. Unit amplitudes, at most 300 events.
SweepResult transcription_sweep(const EventSequence& eta, NormKind kind);
/// Re-evaluates a sweep witness.
double sweep_witness_value(const EventSequence& eta, NormKind kind, const SweepResult& w);

/// Restriction to the first MMD interval, transcribed with T_{+-} and then
/// T_{-+} until no pattern is left.
DenseEvents pi_map(const EventSequence& eta);

} // namespace sodkit
