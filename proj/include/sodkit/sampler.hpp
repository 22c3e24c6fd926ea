#pragma once

#include "sodkit/events.hpp"
#include "sodkit/signal.hpp"

#include <cstddef>
#include <string_view>

namespace sodkit {

/// Strictly positive, finite sampling threshold.
class Threshold {
public:
    explicit Threshold(double value);
    double value() const { return value_; }

private:
    double value_;
};

enum class Scheme { send_on_delta, level_crossing, integrate_and_fire };

Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme scheme);

/// Send-on-delta: the next event fires at the first t > t_k with
/// |f(t) - f(t_k)| >= theta; its amplitude is the signed step (+-theta).
/// Crossings are solved in closed form per segment. A crossing exactly at
/// t = T is emitted; t = 0 never carries an event.
EventSequence sod_sample(const Signal& f, Threshold theta);

/// Level crossing with hysteresis on the lattice {k theta}.
EventSequence lc_sample(const Signal& f, Threshold theta);

/// Integrate-and-fire without leak: send-on-delta of the running integral.
/// Input must be piecewise linear.
EventSequence if_sample(const Signal& f, Threshold theta);

EventSequence sample(const Signal& f, Threshold theta, Scheme scheme);

/// Piecewise-linear right inverse of sod_sample for theta-pure sequences:
/// passes through (0, 0) and (t_k, running sum), constant after the last
/// event. sod_sample(reconstruct(eta), theta) == eta exactly.
Signal reconstruct(const EventSequence& eta);

struct HomogeneityReport {
    bool holds = false;
    std::size_t count_direct = 0;
    std::size_t count_rescaled = 0;
    double max_time_gap = 0.0;
};

/// Compares Phi_{other}(f) against Phi_{base}((base/other) f).
HomogeneityReport homogeneity_report(const Signal& f, Threshold base, Threshold other);
bool homogeneity_check(const Signal& f, Threshold base, Threshold other);

} // namespace sodkit
