#include "sodkit/analysis.hpp"

#include "sodkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sodkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> random_times(Rng& rng, std::size_t n, double horizon) {
    for (;;) {
        std::vector<double> t(n);
        for (double& x : t) {
            x = (1.0 - rng.uniform()) * horizon;
        }
        std::sort(t.begin(), t.end());
        for (std::size_t k = 1; k < n; ++k) {
            if (t[k] <= t[k - 1]) {
                t[k] = std::nextafter(t[k - 1], horizon + 1.0);
            }
        }
        if (n == 0 || t.back() <= horizon) {
            return t;
        }
    }
}

// Replaces times within `tol` of a reference time by that reference time.
EventSequence snap_to(const EventSequence& x, std::span<const double> ref, double tol) {
    if (ref.empty() || x.empty()) {
        return x;
    }
    std::vector<double> t(x.times().begin(), x.times().end());
    for (double& time : t) {
        auto it = std::lower_bound(ref.begin(), ref.end(), time);
        double best = std::numeric_limits<double>::infinity();
        double snapped = time;
        if (it != ref.end() && std::fabs(*it - time) < best) {
            best = std::fabs(*it - time);
            snapped = *it;
        }
        if (it != ref.begin() && std::fabs(*(it - 1) - time) < best) {
            best = std::fabs(*(it - 1) - time);
            snapped = *(it - 1);
        }
        if (best <= tol) {
            time = snapped;
        }
    }
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (!(t[k] > t[k - 1])) {
            return x;
        }
    }
    return EventSequence(x.horizon(), std::move(t), {x.values().begin(), x.values().end()});
}

// Linear extrapolation of matching event times to eps = 0.
std::optional<EventSequence> extrapolate(const EventSequence& far, double eps_far, const EventSequence& near,
                                         double eps_near) {
    if (far.size() != near.size()) {
        return std::nullopt;
    }
    std::vector<double> t(near.size());
    const double w = eps_near / (eps_far - eps_near);
    for (std::size_t k = 0; k < near.size(); ++k) {
        if (far.values()[k] != near.values()[k]) {
            return std::nullopt;
        }
        t[k] = std::clamp(near.times()[k] - w * (far.times()[k] - near.times()[k]), 0.0, near.horizon());
        if (k > 0 && !(t[k] > t[k - 1])) {
            return std::nullopt;
        }
    }
    return EventSequence(near.horizon(), std::move(t), {near.values().begin(), near.values().end()});
}

double b_for(double a, std::span<const QiTrial> rows) {
    double b = 0.0;
    for (const auto& r : rows) {
        b = std::max({b, r.dx / a - r.dy, r.dy - a * r.dx});
    }
    return b;
}

bool grows(const std::vector<double>& ladder, double factor) {
    if (ladder.size() < 2) {
        return false;
    }
    const double last = ladder.back();
    const double prev = ladder[ladder.size() - 2];
    return !std::isfinite(last) || last >= factor * prev;
}

} // namespace

std::string metric_name(const EventMetric& metric) {
    return std::visit(overloaded{[](NormKind k) { return std::string(norm_name(k)); },
                                 [](const VanRossumMetric&) { return std::string("vr"); },
                                 [](const VictorPurpuraMetric&) { return std::string("vp"); },
                                 [](const SchreiberMetric&) { return std::string("schreiber"); }},
                      metric);
}

double distance(const EventMetric& metric, const EventSequence& a, const EventSequence& b) {
    return std::visit(overloaded{[&](NormKind k) { return norm(k, difference(a, b)); },
                                 [&](const VanRossumMetric& m) { return van_rossum(a, b, m.params); },
                                 [&](const VictorPurpuraMetric& m) { return victor_purpura(a, b, m.params); },
                                 [&](const SchreiberMetric& m) {
                                     return a == b ? 0.0 : schreiber_distance(a, b, m.params);
                                 }},
                      metric);
}

namespace families {

EventSequence alternating(std::size_t n, int first_sign, double spacing, double horizon) {
    std::vector<double> t(n);
    std::vector<double> v(n);
    double sign = first_sign >= 0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = static_cast<double>(k) * spacing;
        v[k] = sign;
        sign = -sign;
    }
    return EventSequence(horizon, std::move(t), std::move(v));
}

EventSequence mmsn(std::size_t n) {
    std::vector<double> t(n);
    std::vector<double> v(n);
    const std::size_t half = (n + 1) / 2;
    for (std::size_t k = 1; k <= n; ++k) {
        t[k - 1] = static_cast<double>(k) / static_cast<double>(n);
        v[k - 1] = k <= half ? 1.0 : -1.0;
    }
    return EventSequence(1.0, std::move(t), std::move(v));
}

EventSequence dip(std::size_t k) {
    const std::size_t n = 3 * k;
    std::vector<double> t(n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<double>(i + 1) / static_cast<double>(n);
        v[i] = i < k ? -1.0 : 1.0;
    }
    return EventSequence(1.0, std::move(t), std::move(v));
}

EventSequence all_positive(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) {
        t[k] = static_cast<double>(k + 1) / static_cast<double>(n);
    }
    return EventSequence(1.0, std::move(t), std::vector<double>(n, 1.0));
}

EventSequence random_units(Rng& rng, std::size_t n, double horizon) {
    auto t = random_times(rng, n, horizon);
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.coin() ? 1.0 : -1.0;
    }
    return EventSequence(horizon, std::move(t), std::move(v));
}

EventSequence random_pure(Rng& rng, std::size_t n, double theta, double horizon) {
    auto t = random_times(rng, n, horizon);
    std::vector<double> v(n);
    for (double& x : v) {
        x = rng.coin() ? theta : -theta;
    }
    return EventSequence(horizon, std::move(t), std::move(v));
}

} // namespace families

EmdmSweepReport emdm_sweep(const Signal& f, const EventMetric& metric, std::span<const double> thetas,
                           const EmdmOptions& options) {
    EmdmSweepReport report;
    report.metric = metric_name(metric);
    for (double e = options.eps_start; e >= options.eps_floor; e *= 0.5) {
        report.eps_grid.push_back(e);
    }
    if (report.eps_grid.size() < 2) {
        throw DomainError("emdm_sweep: the eps grid needs at least two points");
    }
    for (const double theta : thetas) {
        const Threshold th(theta);
        const EventSequence at = normalize(sod_sample(f, th), theta);

        std::vector<double> eps;
        std::vector<EventSequence> above;
        for (const double e : report.eps_grid) {
            const double shifted = theta + theta * e;
            eps.push_back(shifted - theta);
            above.push_back(normalize(sod_sample(f, Threshold(shifted)), shifted));
        }
        std::vector<double> d;
        for (std::size_t i = 1; i < above.size(); ++i) {
            auto limit = extrapolate(above[i - 1], eps[i - 1], above[i], eps[i]);
            const EventSequence lim = snap_to(limit ? *limit : above[i], at.times(), options.tolerance);
            d.push_back(distance(metric, at, lim));
        }
        EmdmThetaRow row;
        row.theta = theta;
        row.value = d.back();
        row.stabilized = d.size() >= 2 && std::fabs(d.back() - d[d.size() - 2]) <= options.tolerance;
        row.eps = eps.back();
        row.events_at = at.size();
        row.events_above = above.back().size();
        if (report.rows.empty() || row.value > report.lambda) {
            report.lambda = std::max(report.lambda, row.value);
            report.argmax_theta = theta;
        }
        report.rows.push_back(row);
    }
    return report;
}

double van_rossum_kappa(double alpha, double spacing) {
    if (alpha == 0.0) {
        return 0.5;
    }
    const double e = std::exp(-alpha * spacing);
    return e * e * (1.0 - e) * (1.0 - e);
}

EmdmCharacterization emdm_characterize(const EventMetric& metric, std::size_t n_max,
                                       std::span<const double> horizons, std::span<const double> spacings) {
    if (n_max < 1) {
        throw DomainError("emdm_characterize: n_max must be >= 1");
    }
    EmdmCharacterization out;
    out.metric = metric_name(metric);
    out.n_max = n_max;

    if (const auto* kind = std::get_if<NormKind>(&metric)) {
        const double horizon = horizons.empty() ? 1.0 : horizons.front();
        std::size_t next_row = 1;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const double spacing = horizon / static_cast<double>(n);
            double value = 0.0;
            for (const int sign : {+1, -1}) {
                value = std::max(value, norm(*kind, families::alternating(n, sign, spacing, horizon)));
            }
            out.value = std::max(out.value, value);
            if (n == next_row || n == n_max) {
                out.growth.push_back({n, horizon, spacing, value, kNaN, kNaN});
                next_row *= 2;
            }
        }
        return out;
    }

    for (const double horizon : horizons) {
        for (const double spacing : spacings) {
            if (!(spacing > 0.0) || !(horizon > 0.0)) {
                throw DomainError("emdm_characterize: horizons and spacings must be positive");
            }
            const auto n = static_cast<std::size_t>(std::llround(horizon / spacing));
            if (n < 1 || n > n_max) {
                continue;
            }
            const EventSequence train = families::alternating(n, +1, spacing, horizon);
            GrowthRow row{n, horizon, spacing, 0.0, kNaN, kNaN};
            std::visit(overloaded{[&](NormKind) {},
                                  [&](const VanRossumMetric& m) {
                                      row.value = van_rossum_energy(train, m.params);
                                      row.lower = van_rossum_kappa(m.params.alpha, spacing) * horizon;
                                      row.upper = horizon;
                                  },
                                  [&](const VictorPurpuraMetric& m) {
                                      row.value = victor_purpura(train, EventSequence(horizon), m.params);
                                  },
                                  [&](const SchreiberMetric& m) {
                                      row.value = schreiber_distance(train, scale(train, -1.0), m.params);
                                  }},
                       metric);
            out.value = std::max(out.value, row.value);
            out.growth.push_back(row);
        }
    }
    return out;
}

std::vector<SignalPair> random_corpus(std::uint64_t seed, std::size_t trials, double horizon) {
    std::vector<SignalPair> out;
    out.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng = Rng::stream(seed, i);
        auto draw = [&] {
            const auto breaks = static_cast<int>(rng.integer(1, 20));
            const double amplitude = rng.uniform(0.05, 0.6);
            return generate::random_walk(rng.integer(0, std::numeric_limits<std::int64_t>::max()), breaks, amplitude,
                                         horizon);
        };
        Signal f = draw();
        Signal g = draw();
        out.push_back({std::move(f), std::move(g)});
    }
    return out;
}

QiReport qi_verify(std::span<const SignalPair> corpus, Threshold theta, NormKind kind) {
    if (corpus.empty()) {
        throw DomainError("qi_verify: empty corpus");
    }
    const double th = theta.value();
    QiReport r;
    r.norm = std::string(norm_name(kind));
    r.theta = th;
    r.trials = corpus.size();
    r.bounds_apply = kind != NormKind::max_max_sum;

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& [f, g] = corpus[i];
        const EventSequence ef = sod_sample(f, theta);
        const EventSequence eg = sod_sample(g, theta);
        QiTrial t;
        t.index = i;
        t.theta = th;
        t.dx = diameter_norm(subtract(f, g));
        t.dy = norm(kind, difference(ef, eg));
        switch (kind) {
        case NormKind::discrepancy:
            t.lower = t.dx - 4.0 * th;
            t.upper = t.dx + 2.0 * th;
            break;
        case NormKind::alexiewicz:
            t.lower = 0.5 * t.dx - 2.0 * th;
            t.upper = t.dx + 2.0 * th;
            break;
        case NormKind::max_max_sum:
            t.lower = kNaN;
            t.upper = kNaN;
            break;
        }
        if (r.bounds_apply) {
            t.violated = t.dy < t.lower - kQiSlack || t.dy > t.upper + kQiSlack;
            r.violations += t.violated ? 1 : 0;
        }
        for (const EventSequence* e : {&ef, &eg}) {
            const EventSequence back = sod_sample(reconstruct(*e), theta);
            if (!(back == *e)) {
                r.c = std::max(r.c, discrepancy_norm(difference(back, *e)));
            }
        }
        r.rows.push_back(t);
    }

    // Minimal B(A) = max(dx/A - dy, dy - A dx, 0) is convex in A; trade it
    // off against A by the mean input distance.
    double mean_dx = 0.0;
    for (const auto& t : r.rows) {
        mean_dx += t.dx;
    }
    mean_dx /= static_cast<double>(r.rows.size());
    auto cost = [&](double a) { return b_for(a, r.rows) + (a - 1.0) * mean_dx; };
    double best_a = 1.0;
    double best = cost(1.0);
    for (int k = 1; k <= 200; ++k) {
        const double a = 1.0 + 0.05 * k;
        const double c = cost(a);
        if (c < best) {
            best = c;
            best_a = a;
        }
    }
    double lo = std::max(1.0, best_a - 0.05);
    double hi = best_a + 0.05;
    for (int it = 0; it < 100; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (cost(m1) <= cost(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const double refined = 0.5 * (lo + hi);
    r.a = cost(refined) < best ? refined : best_a;
    r.b = b_for(r.a, r.rows);
    r.b_at_unit_a = b_for(1.0, r.rows);

    std::vector<QiTrial> sorted = r.rows;
    std::sort(sorted.begin(), sorted.end(), [](const QiTrial& x, const QiTrial& y) { return x.dx < y.dx; });
    std::vector<double> suffix_min(sorted.size());
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = sorted.size(); k-- > 0;) {
        m = std::min(m, sorted[k].dy);
        suffix_min[k] = m;
    }
    double run_max = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        run_max = std::max(run_max, sorted[k].dy);
        r.envelope.push_back({sorted[k].dx, suffix_min[k], run_max});
    }
    return r;
}

SignalPair isometry_reference_pair() {
    const double t[] = {0.0, 1.0, 2.0, 3.0, 4.0};
    const double f[] = {0.0, 0.625, 0.125, 0.875, 0.25};
    // f - g spans [-0.25, 0.75]
    const double g[] = {0.0, -0.125, 0.375, 0.375, 0.0};
    return {generate::piecewise_linear(4.0, t, f), generate::piecewise_linear(4.0, t, g)};
}

std::vector<IsometryRow> asymptotic_isometry(const SignalPair& pair, std::span<const double> thetas) {
    const double dx = diameter_norm(subtract(pair.f, pair.g));
    std::vector<IsometryRow> rows;
    for (const double theta : thetas) {
        const Threshold th(theta);
        IsometryRow row;
        row.theta = theta;
        row.dx = dx;
        row.dy = discrepancy_norm(difference(sod_sample(pair.f, th), sod_sample(pair.g, th)));
        row.gap = std::fabs(row.dy - dx);
        row.ratio = dx > 0.0 ? row.dy / dx : kNaN;
        row.within = row.gap <= 4.0 * theta + kQiSlack;
        rows.push_back(row);
    }
    return rows;
}

Signal local_max_signal() {
    const double t[] = {0.0, 1.0, 2.0, 3.0};
    const double v[] = {0.0, 1.0, 0.0, 1.5};
    return generate::piecewise_linear(3.0, t, v);
}

ContinuityReport left_continuity_probe(const Signal& f, Threshold theta0, int n_steps) {
    if (n_steps < 1) {
        throw DomainError("left_continuity_probe: n_steps must be >= 1");
    }
    const double th0 = theta0.value();
    ContinuityReport r;
    r.theta0 = th0;
    const EventSequence ref = sod_sample(f, theta0);
    r.reference_times.assign(ref.times().begin(), ref.times().end());

    for (int n = 1; n <= n_steps; ++n) {
        const double w = std::ldexp(1.0, -n);
        const double below = th0 * (1.0 - w);
        const double above = th0 * (1.0 + w);
        const auto eb = sod_sample(f, Threshold(below));
        const auto ea = sod_sample(f, Threshold(above));
        r.below.push_back({n, below, {eb.times().begin(), eb.times().end()}});
        r.above.push_back({n, above, {ea.times().begin(), ea.times().end()}});
    }

    const std::size_t count = ref.size();
    std::size_t first = r.below.size();
    while (first > 0 && r.below[first - 1].times.size() == count) {
        --first;
    }
    if (first < r.below.size()) {
        r.stabilized_at = r.below[first].n;
        r.monotone = true;
        r.from_below = true;
        for (std::size_t s = first; s < r.below.size(); ++s) {
            const auto& cur = r.below[s].times;
            for (std::size_t k = 0; k < count; ++k) {
                r.from_below = r.from_below && cur[k] <= r.reference_times[k];
                if (s > first) {
                    r.monotone = r.monotone && r.below[s - 1].times[k] <= cur[k];
                }
            }
        }
        for (std::size_t k = 0; k < count; ++k) {
            r.final_gap = std::max(r.final_gap, std::fabs(r.below.back().times[k] - r.reference_times[k]));
        }
        r.converges = r.final_gap <= 1e-6 * std::max(1.0, f.horizon());
    }
    r.control_count = r.above.back().times.size();
    r.control_drop = r.control_count < count;
    return r;
}

SchreiberWitness schreiber_witness(std::size_t n, const SchreiberParams& params) {
    if (n < 2) {
        throw DomainError("schreiber_witness: n must be >= 2");
    }
    std::vector<double> t(n);
    std::vector<double> v1(n);
    std::vector<double> v3(n);
    for (std::size_t k = 1; k <= n; ++k) {
        t[k - 1] = static_cast<double>(k) / static_cast<double>(n);
        v1[k - 1] = 2 * k <= n ? 1.0 : -1.0;
        v3[k - 1] = k % 2 == 0 ? 1.0 : -1.0;
    }
    const EventSequence e1(1.0, t, v1);
    const EventSequence e3(1.0, t, v3);
    const EventSequence e2 = scale(e1, -1.0);
    const EventSequence e4 = scale(e3, -1.0);
    SchreiberWitness w;
    w.s12 = schreiber_similarity(e1, e2, params);
    w.s34 = schreiber_similarity(e3, e4, params);
    w.d12 = schreiber_distance(e1, e2, params);
    w.d34 = schreiber_distance(e3, e4, params);
    w.sequences = {e1, e2, e3, e4};
    return w;
}

CertificationReport certify_norm(NormKind kind, const FamilyConfig& config) {
    if (config.sizes.empty()) {
        throw DomainError("certify_norm: empty size ladder");
    }
    for (const std::size_t n : config.sizes) {
        if (n < 1 || n > kSweepLimit) {
            throw SizeGuardError("certify_norm: family sizes must lie in [1, 300]");
        }
    }
    CertificationReport rep;
    rep.norm = std::string(norm_name(kind));
    rep.alt.name = "alt";
    rep.same_sign.name = "same_sign";
    rep.sweep.name = "sweep";

    for (std::size_t idx = 0; idx < config.sizes.size(); ++idx) {
        const std::size_t n = config.sizes[idx];
        const bool last = idx + 1 == config.sizes.size();

        double alt = -1.0;
        for (const int sign : {+1, -1}) {
            const EventSequence eta = families::alternating(n, sign, 1.0 / static_cast<double>(n), 1.0);
            const double v = norm(kind, eta);
            if (v > alt) {
                alt = v;
                if (last) {
                    rep.alt.witness = {sign > 0 ? "alternating+" : "alternating-", eta, v, v, std::nullopt};
                }
            }
        }
        rep.alt.ladder.push_back(alt);

        const EventSequence pos = families::all_positive(n);
        const double pv = norm(kind, pos);
        rep.same_sign.ladder.push_back(pv / static_cast<double>(n));
        if (last) {
            rep.same_sign.witness = {"all_positive", pos, pv, pv / static_cast<double>(n), std::nullopt};
        }

        std::vector<std::pair<std::string, EventSequence>> fam;
        fam.emplace_back("mmsn", families::mmsn(n));
        fam.emplace_back("alternating", families::alternating(n, +1, 1.0 / static_cast<double>(n), 1.0));
        fam.emplace_back("dip", families::dip(std::max<std::size_t>(1, n / 3)));
        for (std::size_t j = 0; j < config.random_per_size; ++j) {
            Rng rng = Rng::stream(config.seed, n * 1000 + j);
            fam.emplace_back("random", families::random_units(rng, n, 1.0));
        }
        double best = -1.0;
        for (auto& [name, eta] : fam) {
            const double base = norm(kind, eta);
            if (!(base > 0.0)) {
                continue;
            }
            const SweepResult s = transcription_sweep(eta, kind);
            const double ratio = s.value / base;
            if (ratio > best) {
                best = ratio;
                if (last) {
                    rep.sweep.witness = {name, eta, base, ratio, s};
                }
            }
        }
        rep.sweep.ladder.push_back(best);
    }

    const double f = config.growth_factor;
    rep.alt.estimate = *std::max_element(rep.alt.ladder.begin(), rep.alt.ladder.end());
    rep.alt.holds = !grows(rep.alt.ladder, f);
    rep.sweep.estimate = *std::max_element(rep.sweep.ladder.begin(), rep.sweep.ladder.end());
    rep.sweep.holds = !grows(rep.sweep.ladder, f);
    const auto& ss = rep.same_sign.ladder;
    rep.same_sign.estimate = *std::min_element(ss.begin(), ss.end());
    rep.same_sign.holds = ss.back() > 0.0 && (ss.size() < 2 || ss.back() * f > ss[ss.size() - 2]);
    rep.equivalent = rep.alt.holds && rep.same_sign.holds && rep.sweep.holds;
    return rep;
}

double reevaluate(NormKind kind, const ConditionResult& condition) {
    const Witness& w = condition.witness;
    const double base = norm(kind, w.sequence);
    if (w.sweep) {
        return sweep_witness_value(w.sequence, kind, *w.sweep) / base;
    }
    if (condition.name == "same_sign") {
        return base / static_cast<double>(w.sequence.size());
    }
    return base;
}

} // namespace sodkit
