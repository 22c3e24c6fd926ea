#include "sodkit/sampler.hpp"

#include "sodkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace sodkit {

namespace {

// Roots closer than this to a segment end are snapped onto the stored
// breakpoint so that event times can coincide exactly with breakpoints.
constexpr double kSnap = 1e-12;
// Rounding allowance, in ulps of the segment's magnitude, for deciding that
// a level is met exactly.
constexpr double kValueUlps = 8.0;

struct Crossing {
    double t;
    int direction;
    std::size_t segment;
};

// Real roots u of c0 + c1 u + c2 u^2 = level (at most two).
int solve_level(const Segment& s, double level, double roots[2]) {
    const double a = s.c2;
    const double b = s.c1;
    const double c = s.c0 - level;
    if (a == 0.0) {
        if (b == 0.0) {
            return 0;
        }
        roots[0] = (level - s.c0) / b;
        return 1;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        // tangential touch lost to rounding
        const double u = -b / (2.0 * a);
        const double scale = std::max({1.0, std::fabs(s.c0), std::fabs(level), std::fabs(b * u)});
        if (std::fabs(c + u * (b + u * a)) <= kValueUlps * std::numeric_limits<double>::epsilon() * scale) {
            roots[0] = u;
            return 1;
        }
        return 0;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        roots[0] = 0.0;
        return 1;
    }
    roots[0] = q / a;
    roots[1] = c / q;
    return 2;
}

// First t > t_from (searching from segment `seg`) at which f reaches `upper`
// or `lower`.
std::optional<Crossing> first_crossing(const Signal& f, std::size_t seg, double t_from, double lower,
                                       double upper) {
    const auto segs = f.segments();
    for (std::size_t i = seg; i < segs.size(); ++i) {
        const Segment& s = segs[i];
        const double end = f.segment_end(i);
        if (end <= t_from) {
            continue;
        }
        const double h = end - s.t;
        double best = std::numeric_limits<double>::infinity();
        int best_dir = 0;
        const double scale = std::max({1.0, std::fabs(s.c0), std::fabs(s.c1 * h), std::fabs(s.c2 * h * h)});

        const double levels[2] = {upper, lower};
        const int dirs[2] = {+1, -1};
        for (int l = 0; l < 2; ++l) {
            double roots[2];
            const int n = solve_level(s, levels[l], roots);
            bool found = false;
            for (int r = 0; r < n; ++r) {
                const double u = roots[r];
                if (!(u >= -kSnap && u <= h + kSnap)) {
                    continue;
                }
                // Snap only when the level is met at the endpoint up to
                // rounding; a level just above a peak must stay unreached.
                const double tol = kValueUlps * std::numeric_limits<double>::epsilon() *
                                   std::max(scale, std::fabs(levels[l]));
                double t;
                if (std::fabs(u - h) <= kSnap && std::fabs(s.value_at(h) - levels[l]) <= tol) {
                    t = end;
                } else if (std::fabs(u) <= kSnap && std::fabs(s.c0 - levels[l]) <= tol) {
                    t = s.t;
                } else if (u < 0.0 || u > h) {
                    continue;
                } else {
                    t = s.t + u;
                }
                if (!(t > t_from)) {
                    continue;
                }
                found = true;
                if (t < best) {
                    best = t;
                    best_dir = dirs[l];
                }
            }
            if (!found) {
                // The closed-form root can land a few ulps past the end when
                // the level is met exactly at the breakpoint.
                const double at_end = s.value_at(h);
                const bool reached = dirs[l] > 0 ? at_end >= levels[l] : at_end <= levels[l];
                if (reached && end > t_from && end < best) {
                    best = end;
                    best_dir = dirs[l];
                }
            }
        }
        if (best_dir != 0) {
            return Crossing{best, best_dir, i};
        }
    }
    return std::nullopt;
}

template <typename LevelOf>
EventSequence run_sampler(const Signal& f, double theta, LevelOf level_of) {
    std::vector<double> times;
    std::vector<double> values;
    double t = 0.0;
    std::size_t seg = 0;
    long long level = 0;
    for (;;) {
        const double lower = static_cast<double>(level - 1) * theta;
        const double upper = static_cast<double>(level + 1) * theta;
        const auto c = first_crossing(f, seg, t, lower, upper);
        if (!c) {
            break;
        }
        times.push_back(c->t);
        values.push_back(c->direction > 0 ? theta : -theta);
        t = c->t;
        seg = c->segment;
        level = level_of(level + c->direction, t);
    }
    return EventSequence(f.horizon(), std::move(times), std::move(values));
}

} // namespace

Threshold::Threshold(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError("threshold must be positive and finite");
    }
}

Scheme parse_scheme(std::string_view name) {
    if (name == "sod") {
        return Scheme::send_on_delta;
    }
    if (name == "lc") {
        return Scheme::level_crossing;
    }
    if (name == "if") {
        return Scheme::integrate_and_fire;
    }
    throw DomainError("unknown sampling scheme '" + std::string(name) + "' (expected sod|lc|if)");
}

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
    case Scheme::send_on_delta:
        return "sod";
    case Scheme::level_crossing:
        return "lc";
    case Scheme::integrate_and_fire:
        return "if";
    }
    return "?";
}

EventSequence sod_sample(const Signal& f, Threshold theta) {
    // f(0) = 0 and every event moves the reference by exactly +-theta, so the
    // reference value at t_k is (integer level) * theta.
    return run_sampler(f, theta.value(), [](long long next, double) { return next; });
}

EventSequence lc_sample(const Signal& f, Threshold theta) {
    const double th = theta.value();
    return run_sampler(f, th, [&](long long, double t) { return std::llround(f.evaluate(t) / th); });
}

EventSequence if_sample(const Signal& f, Threshold theta) {
    return sod_sample(integrate(f), theta);
}

EventSequence sample(const Signal& f, Threshold theta, Scheme scheme) {
    switch (scheme) {
    case Scheme::send_on_delta:
        return sod_sample(f, theta);
    case Scheme::level_crossing:
        return lc_sample(f, theta);
    case Scheme::integrate_and_fire:
        return if_sample(f, theta);
    }
    throw DomainError("unknown sampling scheme");
}

Signal reconstruct(const EventSequence& eta) {
    if (eta.empty()) {
        return Signal::zero(eta.horizon());
    }
    const auto theta = common_magnitude(eta);
    if (!theta) {
        throw DomainError("reconstruct: amplitudes do not share one magnitude");
    }
    if (eta.times()[0] == 0.0) {
        throw DomainError("reconstruct: an event at t = 0 cannot come from a signal with f(0) = 0");
    }
    std::vector<double> t{0.0};
    std::vector<double> v{0.0};
    long long level = 0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        level += eta.values()[k] > 0.0 ? 1 : -1;
        t.push_back(eta.times()[k]);
        v.push_back(static_cast<double>(level) * *theta);
    }
    return generate::piecewise_linear(eta.horizon(), t, v);
}

HomogeneityReport homogeneity_report(const Signal& f, Threshold base, Threshold other) {
    const double ratio = base.value() / other.value();
    const EventSequence direct = sod_sample(f, other);
    const EventSequence rescaled = sod_sample(scale(f, ratio), base);

    HomogeneityReport r;
    r.count_direct = direct.size();
    r.count_rescaled = rescaled.size();
    if (direct.size() != rescaled.size()) {
        return r;
    }
    const double tol = 1e-12 * std::max(1.0, f.horizon());
    bool ok = true;
    for (std::size_t k = 0; k < direct.size(); ++k) {
        const double gap = std::fabs(direct.times()[k] - rescaled.times()[k]);
        r.max_time_gap = std::max(r.max_time_gap, gap);
        ok = ok && gap <= tol;
        const double mapped = direct.values()[k] * ratio;
        ok = ok && std::fabs(mapped - rescaled.values()[k]) <= 1e-12 * base.value();
    }
    r.holds = ok;
    return r;
}

bool homogeneity_check(const Signal& f, Threshold base, Threshold other) {
    return homogeneity_report(f, base, other).holds;
}

} // namespace sodkit
