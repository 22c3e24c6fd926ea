#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sodkit {

struct Event {
    double t = 0.0;
    double v = 0.0;
    bool operator==(const Event&) const = default;
};

/// Finite, sparse event sequence on [0, T]: strictly increasing times, non-zero
/// amplitudes. Times and amplitudes are stored as separate arrays so norm
/// kernels can run on the amplitudes directly.
class EventSequence {
public:
    explicit EventSequence(double horizon);
    EventSequence(double horizon, std::span<const Event> events);
    EventSequence(double horizon, std::vector<double> times, std::vector<double> values);

    double horizon() const { return horizon_; }
    std::size_t size() const { return times_.size(); }
    bool empty() const { return times_.empty(); }

    std::span<const double> times() const { return times_; }
    std::span<const double> values() const { return values_; }
    Event operator[](std::size_t i) const { return {times_[i], values_[i]}; }
    std::vector<Event> events() const;

    bool operator==(const EventSequence&) const = default;

private:
    void validate() const;

    double horizon_;
    std::vector<double> times_;
    std::vector<double> values_;
};

/// Pointwise a - b on the merged time grid; cancelled times are dropped.
EventSequence difference(const EventSequence& a, const EventSequence& b);
/// Pointwise a + b on the merged time grid.
EventSequence add(const EventSequence& a, const EventSequence& b);
EventSequence scale(const EventSequence& eta, double lambda);
/// Amplitudes divided by theta, so theta-pure input maps to exact +-1.
EventSequence normalize(const EventSequence& eta, double theta);

/// Events with lo <= t <= hi. The interval must lie inside [0, T].
EventSequence restrict(const EventSequence& eta, double lo, double hi);
/// Events with index in [first, last] (inclusive).
EventSequence restrict_indices(const EventSequence& eta, std::size_t first, std::size_t last);

/// (positive part, magnitudes of the negative part); eta = plus - minus.
std::pair<EventSequence, EventSequence> split_signs(const EventSequence& eta);

/// Consecutive amplitudes strictly alternate in sign. Empty and singleton
/// sequences count as alternating.
bool is_alternating(const EventSequence& eta);
bool is_alternating(std::span<const double> values);

/// The common |v| when all amplitudes share one magnitude.
std::optional<double> common_magnitude(const EventSequence& eta);
bool is_pure(const EventSequence& eta, double theta);

} // namespace sodkit
