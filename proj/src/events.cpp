#include "sodkit/events.hpp"

#include "sodkit/errors.hpp"

#include <cmath>
#include <string>

namespace sodkit {

namespace {

// Merge two grids, combining coincident amplitudes with `op` and dropping
// exact zeros.
template <typename Op>
EventSequence merge(const EventSequence& a, const EventSequence& b, Op op, const char* what) {
    if (a.horizon() != b.horizon()) {
        throw DomainError(std::string(what) + ": event sequences have different horizons");
    }
    const auto at = a.times();
    const auto av = a.values();
    const auto bt = b.times();
    const auto bv = b.values();
    std::vector<double> t;
    std::vector<double> v;
    t.reserve(at.size() + bt.size());
    v.reserve(at.size() + bt.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < at.size() || j < bt.size()) {
        double time;
        double x = 0.0;
        double y = 0.0;
        if (j >= bt.size() || (i < at.size() && at[i] < bt[j])) {
            time = at[i];
            x = av[i++];
        } else if (i >= at.size() || bt[j] < at[i]) {
            time = bt[j];
            y = bv[j++];
        } else {
            time = at[i];
            x = av[i++];
            y = bv[j++];
        }
        const double r = op(x, y);
        if (r != 0.0) {
            t.push_back(time);
            v.push_back(r);
        }
    }
    return EventSequence(a.horizon(), std::move(t), std::move(v));
}

} // namespace

EventSequence::EventSequence(double horizon) : horizon_(horizon) {
    validate();
}

EventSequence::EventSequence(double horizon, std::span<const Event> events) : horizon_(horizon) {
    times_.reserve(events.size());
    values_.reserve(events.size());
    for (const Event& e : events) {
        times_.push_back(e.t);
        values_.push_back(e.v);
    }
    validate();
}

EventSequence::EventSequence(double horizon, std::vector<double> times, std::vector<double> values)
    : horizon_(horizon), times_(std::move(times)), values_(std::move(values)) {
    validate();
}

void EventSequence::validate() const {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw DomainError("event horizon must be positive and finite");
    }
    if (times_.size() != values_.size()) {
        throw DomainError("event times and amplitudes differ in length");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (!(times_[k] >= 0.0 && times_[k] <= horizon_)) {
            throw DomainError("event " + std::to_string(k) + " lies outside [0, T]");
        }
        if (k > 0 && !(times_[k] > times_[k - 1])) {
            throw DomainError("event times must be strictly increasing (event " + std::to_string(k) + ")");
        }
        if (!std::isfinite(values_[k]) || values_[k] == 0.0) {
            throw DomainError("event " + std::to_string(k) + " has a zero or non-finite amplitude");
        }
    }
}

std::vector<Event> EventSequence::events() const {
    std::vector<Event> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) {
        out.push_back((*this)[k]);
    }
    return out;
}

EventSequence difference(const EventSequence& a, const EventSequence& b) {
    return merge(a, b, [](double x, double y) { return x - y; }, "difference");
}

EventSequence add(const EventSequence& a, const EventSequence& b) {
    return merge(a, b, [](double x, double y) { return x + y; }, "add");
}

EventSequence scale(const EventSequence& eta, double lambda) {
    if (!std::isfinite(lambda)) {
        throw DomainError("scale: factor must be finite");
    }
    if (lambda == 0.0) {
        return EventSequence(eta.horizon());
    }
    std::vector<double> v(eta.values().begin(), eta.values().end());
    for (double& x : v) {
        x *= lambda;
    }
    return EventSequence(eta.horizon(), {eta.times().begin(), eta.times().end()}, std::move(v));
}

EventSequence normalize(const EventSequence& eta, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("normalize: theta must be positive and finite");
    }
    std::vector<double> v(eta.values().begin(), eta.values().end());
    for (double& x : v) {
        x /= theta;
    }
    return EventSequence(eta.horizon(), {eta.times().begin(), eta.times().end()}, std::move(v));
}

EventSequence restrict(const EventSequence& eta, double lo, double hi) {
    if (!(lo >= 0.0 && hi <= eta.horizon() && lo <= hi)) {
        throw DomainError("restrict: interval is not a sub-interval of [0, T]");
    }
    std::vector<double> t;
    std::vector<double> v;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        const double tk = eta.times()[k];
        if (tk >= lo && tk <= hi) {
            t.push_back(tk);
            v.push_back(eta.values()[k]);
        }
    }
    return EventSequence(eta.horizon(), std::move(t), std::move(v));
}

EventSequence restrict_indices(const EventSequence& eta, std::size_t first, std::size_t last) {
    if (first > last || last >= eta.size()) {
        throw DomainError("restrict_indices: index range out of bounds");
    }
    const auto t = eta.times().subspan(first, last - first + 1);
    const auto v = eta.values().subspan(first, last - first + 1);
    return EventSequence(eta.horizon(), {t.begin(), t.end()}, {v.begin(), v.end()});
}

std::pair<EventSequence, EventSequence> split_signs(const EventSequence& eta) {
    std::vector<double> pt, pv, mt, mv;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        const double v = eta.values()[k];
        if (v > 0.0) {
            pt.push_back(eta.times()[k]);
            pv.push_back(v);
        } else {
            mt.push_back(eta.times()[k]);
            mv.push_back(-v);
        }
    }
    return {EventSequence(eta.horizon(), std::move(pt), std::move(pv)),
            EventSequence(eta.horizon(), std::move(mt), std::move(mv))};
}

bool is_alternating(std::span<const double> values) {
    double prev = 0.0;
    for (double v : values) {
        if (v == 0.0) {
            continue;
        }
        if (prev != 0.0 && (prev > 0.0) == (v > 0.0)) {
            return false;
        }
        prev = v;
    }
    return true;
}

bool is_alternating(const EventSequence& eta) {
    return is_alternating(eta.values());
}

std::optional<double> common_magnitude(const EventSequence& eta) {
    if (eta.empty()) {
        return std::nullopt;
    }
    const double m = std::fabs(eta.values()[0]);
    for (double v : eta.values()) {
        if (std::fabs(v) != m) {
            return std::nullopt;
        }
    }
    return m;
}

bool is_pure(const EventSequence& eta, double theta) {
    for (double v : eta.values()) {
        if (std::fabs(v) != theta) {
            return false;
        }
    }
    return true;
}

} // namespace sodkit
