#include "sodkit/spike_metrics.hpp"

#include "sodkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace sodkit {

namespace {

void require_same_horizon(const EventSequence& a, const EventSequence& b, const char* what) {
    if (a.horizon() != b.horizon()) {
        throw DomainError(std::string(what) + ": event sequences have different horizons");
    }
}

// int_{max(ti,tj)}^T e^{-alpha(t-ti)} e^{-alpha(t-tj)} dt
double causal_kernel(double ti, double tj, double alpha, double horizon) {
    const double late = std::max(ti, tj);
    if (alpha == 0.0) {
        return horizon - late;
    }
    return std::exp(-alpha * std::fabs(ti - tj)) * -std::expm1(-2.0 * alpha * (horizon - late)) / (2.0 * alpha);
}

// int_0^T g(t-ti) g(t-tj) dt with g(u) = exp(-u^2 / (2 sigma^2))
double gaussian_kernel(double ti, double tj, double sigma, double horizon) {
    const double mid = 0.5 * (ti + tj);
    const double d = ti - tj;
    const double w = std::erf((horizon - mid) / sigma) - std::erf(-mid / sigma);
    return std::exp(-d * d / (4.0 * sigma * sigma)) * sigma * std::sqrt(std::numbers::pi) * 0.5 * w;
}

template <typename Kernel>
double bilinear(const EventSequence& a, const EventSequence& b, Kernel k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            row += b.values()[j] * k(a.times()[i], b.times()[j]);
        }
        acc += a.values()[i] * row;
    }
    return acc;
}

void check_alpha(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("van Rossum: alpha must be finite and >= 0");
    }
}

std::vector<double> expand_units(const EventSequence& eta, bool positive) {
    std::vector<double> out;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        const double v = eta.values()[k];
        if ((v > 0.0) != positive) {
            continue;
        }
        const double m = std::fabs(v);
        if (m != std::floor(m) || m > 1e6) {
            throw DomainError("victor_purpura: amplitudes must be integers (normalize by 1/theta first)");
        }
        out.insert(out.end(), static_cast<std::size_t>(m), eta.times()[k]);
    }
    return out;
}

std::vector<double> merge_sorted(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(x.size() + y.size());
    std::merge(x.begin(), x.end(), y.begin(), y.end(), out.begin());
    return out;
}

} // namespace

double van_rossum_energy(const EventSequence& eta, VanRossumParams p) {
    check_alpha(p.alpha);
    const double T = eta.horizon();
    const double e = bilinear(eta, eta, [&](double ti, double tj) { return causal_kernel(ti, tj, p.alpha, T); });
    return std::max(e, 0.0);
}

double van_rossum(const EventSequence& a, const EventSequence& b, VanRossumParams p) {
    require_same_horizon(a, b, "van_rossum");
    return std::sqrt(van_rossum_energy(difference(a, b), p));
}

double van_rossum_trace(const EventSequence& eta, VanRossumParams p, double t) {
    check_alpha(p.alpha);
    double r = 0.0;
    for (std::size_t k = 0; k < eta.size() && eta.times()[k] <= t; ++k) {
        r += eta.values()[k] * std::exp(-p.alpha * (t - eta.times()[k]));
    }
    return r;
}

double van_rossum_floor(const EventSequence& eta, VanRossumParams p) {
    check_alpha(p.alpha);
    if (eta.empty()) {
        return 0.0;
    }
    double floor = std::numeric_limits<double>::infinity();
    double r = 0.0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        if (k > 0) {
            r *= std::exp(-p.alpha * (eta.times()[k] - eta.times()[k - 1]));
        }
        r += eta.values()[k];
        const double next = k + 1 < eta.size() ? eta.times()[k + 1] : eta.horizon();
        floor = std::min(floor, std::fabs(r) * std::exp(-p.alpha * (next - eta.times()[k])));
    }
    return floor;
}

double schreiber_similarity(const EventSequence& a, const EventSequence& b, const SchreiberParams& p) {
    require_same_horizon(a, b, "schreiber_similarity");
    if (a.empty() || b.empty()) {
        throw UndefinedSimilarity("schreiber_similarity: undefined for an empty event sequence");
    }
    const double T = a.horizon();
    auto run = [&](const EventSequence& x, const EventSequence& y) {
        if (p.kernel == SchreiberKernel::gaussian) {
            if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
                throw DomainError("schreiber_similarity: sigma must be positive and finite");
            }
            return bilinear(x, y, [&](double ti, double tj) { return gaussian_kernel(ti, tj, p.sigma, T); });
        }
        check_alpha(p.alpha);
        return bilinear(x, y, [&](double ti, double tj) { return causal_kernel(ti, tj, p.alpha, T); });
    };
    const double aa = run(a, a);
    const double bb = run(b, b);
    if (!(aa > 0.0) || !(bb > 0.0)) {
        throw UndefinedSimilarity("schreiber_similarity: an input has zero smoothed energy");
    }
    return std::clamp(run(a, b) / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

double schreiber_distance(const EventSequence& a, const EventSequence& b, const SchreiberParams& p) {
    const double s = schreiber_similarity(a, b, p);
    return p.h == SchreiberDistance::arccos ? std::acos(s) : 1.0 - s;
}

VpMode parse_vp_mode(std::string_view name) {
    if (name == "split") {
        return VpMode::split;
    }
    if (name == "combined") {
        return VpMode::combined;
    }
    throw DomainError("unknown Victor-Purpura mode '" + std::string(name) + "' (expected split|combined)");
}

double victor_purpura_trains(const std::vector<double>& a, const std::vector<double>& b, double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw DomainError("victor_purpura: s must be finite and >= 0");
    }
    std::vector<double> prev(b.size() + 1);
    std::vector<double> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = static_cast<double>(j);
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<double>(i);
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const double shift = prev[j - 1] + s * std::fabs(a[i - 1] - b[j - 1]);
            cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0, shift});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double victor_purpura(const EventSequence& a, const EventSequence& b, const VictorPurpuraParams& p) {
    require_same_horizon(a, b, "victor_purpura");
    const auto ap = expand_units(a, true);
    const auto am = expand_units(a, false);
    const auto bp = expand_units(b, true);
    const auto bm = expand_units(b, false);
    if (p.mode == VpMode::split) {
        return victor_purpura_trains(ap, bp, p.s) + victor_purpura_trains(am, bm, p.s);
    }
    return victor_purpura_trains(merge_sorted(ap, bm), merge_sorted(am, bp), p.s);
}

} // namespace sodkit
