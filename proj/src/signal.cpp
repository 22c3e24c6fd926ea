#include "sodkit/signal.hpp"

#include "sodkit/errors.hpp"
#include "sodkit/random.hpp"
#include "sodkit/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sodkit {

namespace {

constexpr double kEps = 1e-12;

bool finite(const Segment& s) {
    return std::isfinite(s.t) && std::isfinite(s.c0) && std::isfinite(s.c1) && std::isfinite(s.c2);
}

// Coefficients of segment `s` re-expanded around time `at` (at >= s.t).
Segment recenter(const Segment& s, double at) {
    const double d = at - s.t;
    return {at, s.value_at(d), s.c1 + 2.0 * s.c2 * d, s.c2};
}

} // namespace

Signal::Signal(double horizon, std::vector<Segment> segments)
    : horizon_(horizon), segments_(std::move(segments)) {
    if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
        throw DomainError("signal horizon must be positive and finite");
    }
    if (segments_.empty()) {
        throw DomainError("signal needs at least one segment");
    }
    if (segments_.front().t != 0.0) {
        throw DomainError("first segment must start at t = 0");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        if (!finite(s)) {
            throw DomainError("segment " + std::to_string(i) + " has a non-finite field");
        }
        if (s.t >= horizon_) {
            throw DomainError("segment " + std::to_string(i) + " starts at or after the horizon");
        }
        if (i > 0) {
            const Segment& prev = segments_[i - 1];
            if (!(s.t > prev.t)) {
                throw DomainError("segment start times must be strictly increasing (segment " +
                                  std::to_string(i) + ")");
            }
            const double left = prev.value_at(s.t - prev.t);
            if (std::fabs(left - s.c0) > kEps * std::max(1.0, std::fabs(s.c0))) {
                throw DomainError("signal is discontinuous at segment " + std::to_string(i));
            }
        }
    }
    if (std::fabs(segments_.front().c0) > kEps) {
        throw DomainError("signal must satisfy f(0) = 0");
    }
}

Signal Signal::zero(double horizon) {
    return Signal(horizon, {Segment{}});
}

double Signal::segment_end(std::size_t i) const {
    return i + 1 < segments_.size() ? segments_[i + 1].t : horizon_;
}

std::size_t Signal::segment_index(double t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double x, const Segment& s) { return x < s.t; });
    if (it == segments_.begin()) {
        return 0;
    }
    return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

double Signal::evaluate(double t) const {
    if (!(t >= 0.0 && t <= horizon_)) {
        throw DomainError("evaluate: t outside [0, T]");
    }
    const Segment& s = segments_[segment_index(t)];
    return s.value_at(t - s.t);
}

int Signal::degree() const {
    int d = 0;
    for (const Segment& s : segments_) {
        if (s.c2 != 0.0) {
            return 2;
        }
        if (s.c1 != 0.0) {
            d = 1;
        }
    }
    return d;
}

Signal scale(const Signal& f, double lambda) {
    if (!std::isfinite(lambda)) {
        throw DomainError("scale: factor must be finite");
    }
    std::vector<Segment> out;
    out.reserve(f.segment_count());
    for (const Segment& s : f.segments()) {
        out.push_back({s.t, lambda * s.c0, lambda * s.c1, lambda * s.c2});
    }
    return Signal(f.horizon(), std::move(out));
}

Signal add(const Signal& f, const Signal& g) {
    if (f.horizon() != g.horizon()) {
        throw DomainError("add: signals have different horizons");
    }
    const auto fs = f.segments();
    const auto gs = g.segments();
    std::vector<double> grid;
    grid.reserve(fs.size() + gs.size());
    for (const Segment& s : fs) {
        grid.push_back(s.t);
    }
    for (const Segment& s : gs) {
        grid.push_back(s.t);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Segment> out;
    out.reserve(grid.size());
    std::size_t i = 0;
    std::size_t j = 0;
    for (double start : grid) {
        while (i + 1 < fs.size() && fs[i + 1].t <= start) {
            ++i;
        }
        while (j + 1 < gs.size() && gs[j + 1].t <= start) {
            ++j;
        }
        const Segment a = recenter(fs[i], start);
        const Segment b = recenter(gs[j], start);
        out.push_back({start, a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2});
    }
    return Signal(f.horizon(), std::move(out));
}

Signal subtract(const Signal& f, const Signal& g) {
    return add(f, scale(g, -1.0));
}

ValueRange value_range(const Signal& f) {
    const std::size_t n = f.segment_count();
    std::vector<double> width(n), c0(n), c1(n), c2(n);
    const auto segs = f.segments();
    for (std::size_t i = 0; i < n; ++i) {
        width[i] = f.segment_end(i) - segs[i].t;
        c0[i] = segs[i].c0;
        c1[i] = segs[i].c1;
        c2[i] = segs[i].c2;
    }
    const simd::Extrema e = simd::segment_extrema({width, c0, c1, c2});
    return {e.lo, e.hi};
}

double diameter_norm(const Signal& f) {
    const ValueRange r = value_range(f);
    return std::fabs(r.hi - r.lo);
}

double sup_norm(const Signal& f) {
    const ValueRange r = value_range(f);
    return std::max(std::fabs(r.lo), std::fabs(r.hi));
}

Signal integrate(const Signal& f) {
    if (f.degree() > 1) {
        throw UnsupportedInput("integrate: input has quadratic segments; the antiderivative would be cubic");
    }
    std::vector<Segment> out;
    out.reserve(f.segment_count());
    double acc = 0.0;
    const auto segs = f.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Segment g{segs[i].t, acc, segs[i].c0, segs[i].c1 / 2.0};
        out.push_back(g);
        acc = g.value_at(f.segment_end(i) - segs[i].t);
    }
    return Signal(f.horizon(), std::move(out));
}

namespace generate {

Signal ramp_plateau(double horizon) {
    if (!(horizon > 0.0)) {
        throw DomainError("ramp_plateau: horizon must be positive");
    }
    std::vector<Segment> segs{{0.0, 0.0, 1.0, 0.0}};
    if (horizon > 0.5) {
        segs.push_back({0.5, 0.5, 0.0, 0.0});
    }
    return Signal(horizon, std::move(segs));
}

Signal piecewise_linear(double horizon, std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size() || times.empty()) {
        throw DomainError("piecewise_linear: need matching, non-empty node lists");
    }
    if (times[0] != 0.0 || values[0] != 0.0) {
        throw DomainError("piecewise_linear: first node must be (0, 0)");
    }
    if (!(times.back() <= horizon)) {
        throw DomainError("piecewise_linear: node beyond the horizon");
    }
    std::vector<Segment> segs;
    segs.reserve(times.size());
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double h = times[i + 1] - times[i];
        if (!(h > 0.0)) {
            throw DomainError("piecewise_linear: node times must be strictly increasing");
        }
        segs.push_back({times[i], values[i], (values[i + 1] - values[i]) / h, 0.0});
    }
    if (times.back() < horizon) {
        segs.push_back({times.back(), values.back(), 0.0, 0.0});
    }
    return Signal(horizon, std::move(segs));
}

Signal sine_pwl(double horizon, int points_per_period) {
    if (points_per_period < 2) {
        throw DomainError("sine_pwl: need at least 2 points per period");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("sine_pwl: horizon must be positive and finite");
    }
    const double step = 2.0 * std::numbers::pi / points_per_period;
    std::vector<double> t{0.0};
    std::vector<double> v{0.0};
    for (long k = 1;; ++k) {
        const double tk = static_cast<double>(k) * step;
        if (tk >= horizon) {
            break;
        }
        t.push_back(tk);
        v.push_back(std::sin(tk) / 4.0);
    }
    t.push_back(horizon);
    v.push_back(std::sin(horizon) / 4.0);
    return piecewise_linear(horizon, t, v);
}

Signal random_walk(std::uint64_t seed, int n_breaks, double amplitude, double horizon) {
    if (n_breaks < 1) {
        throw DomainError("random_walk: n_breaks must be >= 1");
    }
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw DomainError("random_walk: amplitude must be positive and finite");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw DomainError("random_walk: horizon must be positive and finite");
    }
    Rng rng(seed);
    std::vector<double> t;
    t.reserve(static_cast<std::size_t>(n_breaks) + 2);
    for (int i = 0; i < n_breaks; ++i) {
        t.push_back(rng.uniform() * horizon);
    }
    t.push_back(0.0);
    t.push_back(horizon);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    std::vector<double> v(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        v[i] = v[i - 1] + rng.uniform(-amplitude, amplitude);
    }
    return piecewise_linear(horizon, t, v);
}

} // namespace generate

} // namespace sodkit
