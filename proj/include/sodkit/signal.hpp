#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sodkit {

/// One polynomial piece: f(start + u) = c0 + c1 u + c2 u^2 for u >= 0 up to
/// the next piece.
struct Segment {
    double t = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double value_at(double u) const { return c0 + u * (c1 + u * c2); }
    bool operator==(const Segment&) const = default;
};

/// Continuous piecewise-polynomial signal of degree <= 2 on [0, T] with
/// f(0) = 0. Immutable once constructed.
class Signal {
public:
    /// Validates the invariants: T > 0, first start at 0, strictly
    /// increasing starts below T, continuity across breakpoints and f(0) = 0
    /// (both up to 1e-12).
    Signal(double horizon, std::vector<Segment> segments);

    static Signal zero(double horizon);

    double horizon() const { return horizon_; }
    std::span<const Segment> segments() const { return segments_; }
    std::size_t segment_count() const { return segments_.size(); }

    /// Right end of segment i: the next start, or T for the last one.
    double segment_end(std::size_t i) const;
    /// Index of the segment whose half-open span contains t (the last
    /// segment also owns T).
    std::size_t segment_index(double t) const;

    double evaluate(double t) const;
    int degree() const;

    bool operator==(const Signal&) const = default;

private:
    double horizon_;
    std::vector<Segment> segments_;
};

Signal scale(const Signal& f, double lambda);
Signal add(const Signal& f, const Signal& g);
Signal subtract(const Signal& f, const Signal& g);

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Exact inf and sup of f over [0, T].
ValueRange value_range(const Signal& f);
/// |sup f - inf f|.
double diameter_norm(const Signal& f);
double sup_norm(const Signal& f);

/// Antiderivative g with g(0) = 0. Input must be piecewise linear.
Signal integrate(const Signal& f);

namespace generate {

/// min{1/2, t} on [0, T].
Signal ramp_plateau(double horizon);

/// Piecewise-linear interpolant of sin(t)/4, i.e. (sin(t) + 1)/4 shifted to
/// start at zero, with `points_per_period` nodes per 2*pi.
Signal sine_pwl(double horizon, int points_per_period);

/// Piecewise-linear random walk: `n_breaks` interior breakpoints drawn
/// uniformly in (0, T), increments uniform in [-amplitude, amplitude].
Signal random_walk(std::uint64_t seed, int n_breaks, double amplitude, double horizon);

/// Piecewise-linear interpolant through (times[i], values[i]). The first
/// node must be (0, 0); the last time must not exceed T. The signal is held
/// constant after the last node.
Signal piecewise_linear(double horizon, std::span<const double> times, std::span<const double> values);

} // namespace generate

} // namespace sodkit
