// Runs every acceptance criterion and prints one PASS/FAIL line per
// criterion. Exit status is the number of failures (capped at 1).

#include "oracles.hpp"

#include "sodkit/analysis.hpp"
#include "sodkit/io.hpp"
#include "sodkit/simd/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sodkit;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

std::string fmt(double x) {
    return io::format_double(x);
}

std::vector<double> random_integers(Rng& rng, std::size_t n, int bound) {
    std::vector<double> v(n);
    for (double& x : v) {
        do {
            x = static_cast<double>(rng.integer(-bound, bound));
        } while (x == 0.0);
    }
    return v;
}

std::vector<double> unit_values(Rng& rng, std::size_t n, bool runs) {
    std::vector<double> v;
    double sign = rng.coin() ? 1.0 : -1.0;
    while (v.size() < n) {
        const auto len = runs ? static_cast<std::size_t>(rng.integer(1, 6)) : 1;
        for (std::size_t k = 0; k < len && v.size() < n; ++k) {
            v.push_back(runs ? sign : (rng.coin() ? 1.0 : -1.0));
        }
        sign = -sign;
    }
    return v;
}

EventSequence on_grid(const std::vector<double>& v) {
    std::vector<double> t(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        t[k] = static_cast<double>(k + 1);
    }
    return EventSequence(static_cast<double>(v.size() + 1), t, v);
}

std::vector<double> dense_minus(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        d[k] = a[k] - b[k];
    }
    return d;
}

Signal comb(const std::vector<double>& heights) {
    std::vector<double> t{0.0};
    std::vector<double> v{0.0};
    for (std::size_t k = 0; k < heights.size(); ++k) {
        t.push_back(static_cast<double>(k + 1));
        v.push_back(heights[k]);
    }
    return generate::piecewise_linear(static_cast<double>(heights.size() + 1), t, v);
}

Outcome quasi_isometry() {
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = random_corpus(42, 1000);
    std::size_t violations = 0;
    std::size_t recount = 0;
    std::size_t checked = 0;
    for (const double theta : {0.05, 0.1, 0.2, 0.5}) {
        const QiReport r = qi_verify(corpus, Threshold(theta), NormKind::discrepancy);
        violations += r.violations;
        // recount from scratch with the brute-force norm
        for (const auto& [f, g] : corpus) {
            const double dx = oracle::grid_diameter(subtract(f, g), 1e-3);
            const EventSequence d = difference(sod_sample(f, Threshold(theta)), sod_sample(g, Threshold(theta)));
            const double dy = discrepancy_bruteforce(d);
            const bool ok = dx - 4 * theta - kQiSlack <= dy && dy <= dx + 2 * theta + kQiSlack;
            recount += ok ? 0 : 1;
            ++checked;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {violations == 0 && recount == 0 && secs < 10.0,
            std::to_string(checked) + " (pair, theta) checks, violations " + std::to_string(violations) +
                ", independent recount " + std::to_string(recount) + ", " + fmt(std::round(secs * 100) / 100) +
                " s"};
}

Outcome asymptotic_isometry_check() {
    const SignalPair pair = isometry_reference_pair();
    const double dx = diameter_norm(subtract(pair.f, pair.g));
    const double thetas[] = {0.2, 0.1, 0.05, 0.025, 0.0125};
    const auto rows = asymptotic_isometry(pair, thetas);
    bool ok = dx == 1.0 && rows.size() == 5;
    std::ostringstream d;
    for (const auto& r : rows) {
        ok = ok && std::fabs(r.dy - 1.0) <= 4.0 * r.theta;
        d << "theta " << fmt(r.theta) << ": " << fmt(r.dy) << "; ";
    }
    ok = ok && std::fabs(rows.back().ratio - 1.0) <= 0.05;
    d << "final ratio " << fmt(rows.back().ratio);
    return {ok, d.str()};
}

Outcome norm_equivalence() {
    Rng rng(3);
    std::size_t bad = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(rng.integer(1, 80)));
        if (trial % 2 == 0) {
            for (double& x : v) {
                x = rng.uniform(-1.0, 1.0);
            }
        } else {
            v = random_integers(rng, v.size(), 3);
        }
        const double d = discrepancy_norm(std::span<const double>(v));
        const double a = alexiewicz_norm(std::span<const double>(v));
        bad += (0.5 * d <= a && a <= d) ? 0 : 1;
    }
    const EventSequence w(4.0, std::vector<double>{1, 2, 3}, std::vector<double>{-1, 1, 1});
    const bool witness = alexiewicz_norm(w) == 1.0 && discrepancy_norm(w) == 2.0;
    return {bad == 0 && witness,
            "10000 sequences, " + std::to_string(bad) + " outside the sandwich; witness A=" +
                fmt(alexiewicz_norm(w)) + " D=" + fmt(discrepancy_norm(w))};
}

Outcome fast_vs_oracle() {
    Rng rng(4);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const auto v = random_integers(rng, static_cast<std::size_t>(rng.integer(0, 500)), 5);
        const std::span<const double> s(v);
        mismatches += discrepancy_norm(s) == discrepancy_bruteforce(s) ? 0 : 1;
    }
    return {mismatches == 0, "10000 integer sequences (n <= 500, kernel " +
                                 std::string(simd::level_name(simd::active_level())) + "), " +
                                 std::to_string(mismatches) + " mismatches"};
}

Outcome mmsn_counterexample() {
    bool ok = true;
    std::ostringstream d;
    for (const std::size_t n : {4u, 10u, 40u, 100u}) {
        const EventSequence e = families::mmsn(n);
        const double m = max_max_sum_norm(e);
        const double dn = discrepancy_norm(e);
        ok = ok && m == 1.0 && dn == static_cast<double>((n + 1) / 2);
        d << "n=" << n << " M=" << fmt(m) << " D=" << fmt(dn) << "; ";
    }
    const CertificationReport r = certify_norm(NormKind::max_max_sum);
    ok = ok && !r.sweep.holds && !r.equivalent && r.sweep.witness.family == "mmsn" &&
         reevaluate(NormKind::max_max_sum, r.sweep) == r.sweep.witness.value;
    d << "certify(M) sweep " << (r.sweep.holds ? "holds" : "fails") << " with " << r.sweep.witness.family
      << " witness (n=" << r.sweep.witness.sequence.size() << ", sweep " << fmt(r.sweep.witness.value) << ")";
    return {ok, d.str()};
}

Outcome chain_decomposition() {
    Rng rng(6);
    std::size_t bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto v = unit_values(rng, static_cast<std::size_t>(rng.integer(1, 200)), trial % 2 == 1);
        const ChainDecomposition c = chain_decompose(on_grid(v));
        const double r = oracle::discrepancy_direct(v);
        bool ok = static_cast<double>(c.stages.size() - 1) == r && c.stages.back().values == v &&
                  c.stages.front().nonzero_count() == 0;
        double total = 0.0;
        for (std::size_t k = 1; k < c.stages.size(); ++k) {
            const auto inc = dense_minus(c.stages[k].values, c.stages[k - 1].values);
            const double dk = oracle::discrepancy_direct(inc);
            ok = ok && dk == 1.0 && is_alternating(std::span<const double>(inc));
            total += dk;
        }
        ok = ok && total == r;
        bad += ok ? 0 : 1;
    }
    return {bad == 0, "500 unit sequences (n <= 200), " + std::to_string(bad) + " failures"};
}

Outcome transcription_inequality() {
    Rng rng(7);
    std::size_t checks = 0;
    std::size_t bad = 0;
    std::size_t pi_bad = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto v = unit_values(rng, static_cast<std::size_t>(rng.integer(1, 60)), trial % 2 == 1);
        const double base = oracle::discrepancy_direct(v);
        const DenseEvents d = to_dense(on_grid(v));
        for (Pattern p : {Pattern::plus_minus, Pattern::minus_plus}) {
            const std::size_t depth = transcription_depth(d, p);
            for (std::size_t n = 0; n <= depth + 1; ++n) {
                const DenseEvents once = transcribe(d, p, n);
                ++checks;
                bad += oracle::discrepancy_direct(once.values) <= base ? 0 : 1;
                const Pattern q = p == Pattern::plus_minus ? Pattern::minus_plus : Pattern::plus_minus;
                const std::size_t depth2 = transcription_depth(once, q);
                for (std::size_t m = 0; m <= depth2; ++m) {
                    ++checks;
                    bad += oracle::discrepancy_direct(transcribe(once, q, m).values) <= base ? 0 : 1;
                }
            }
        }
        const DenseEvents pi = pi_map(on_grid(v));
        const bool pos = std::any_of(pi.values.begin(), pi.values.end(), [](double x) { return x > 0; });
        const bool neg = std::any_of(pi.values.begin(), pi.values.end(), [](double x) { return x < 0; });
        pi_bad += (!(pos && neg) && static_cast<double>(pi.nonzero_count()) == base) ? 0 : 1;
    }
    return {bad == 0 && pi_bad == 0, std::to_string(checks) + " transcriptions, " + std::to_string(bad) +
                                         " increases; pi_map failures " + std::to_string(pi_bad) + "/400"};
}

Outcome emdm_characterization() {
    const double horizons[] = {10.0, 20.0};
    const double spacings[] = {0.5, 1.0};
    const double omega_d = emdm_characterize(NormKind::discrepancy, 200, horizons, spacings).value;
    const double omega_a = emdm_characterize(NormKind::alexiewicz, 200, horizons, spacings).value;
    bool ok = omega_d == 1.0 && omega_a == 1.0;

    // Adversarial family: local-extrema combs, with extrema on and off the
    // threshold lattice, plus the local-max signal and random walks.
    std::vector<std::pair<std::string, Signal>> signals{{"local_max", local_max_signal()},
                                                        {"sine_pwl(T=20)", generate::sine_pwl(20.0, 32)}};
    const std::vector<std::vector<double>> shapes{{1, 0, 1, 0, 1}, {1, 0.5, 1, 0.5, 1}, {0.5, 1.5, 0.5, 2},
                                                  {2, 0, 2, -1, 1}, {1, -1},            {1, -1, 1, -1},
                                                  {1.5, -0.5, 1.5}};
    for (const auto& s : shapes) {
        std::string label = "comb(";
        for (std::size_t k = 0; k < s.size(); ++k) {
            label += (k ? "," : "") + fmt(s[k]);
        }
        signals.emplace_back(label + ")", comb(s));
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        signals.emplace_back("random_walk(" + std::to_string(seed) + ")", generate::random_walk(seed, 12, 0.5, 3.0));
    }
    const double thetas[] = {0.25, 0.3, 0.5, 0.7, 1.0, 1.5};
    const double resolution = 1e-9;
    double worst_d = 0.0;
    double worst_a = 0.0;
    std::string witness;
    for (const auto& [label, f] : signals) {
        const auto rd = emdm_sweep(f, NormKind::discrepancy, thetas);
        const auto ra = emdm_sweep(f, NormKind::alexiewicz, thetas);
        if (rd.lambda > worst_d) {
            worst_d = rd.lambda;
            witness = label + " at theta " + fmt(rd.argmax_theta);
        }
        worst_a = std::max(worst_a, ra.lambda);
    }
    ok = ok && worst_d <= omega_d + resolution && worst_a <= omega_a + resolution;
    return {ok, "characterization D=" + fmt(omega_d) + " A=" + fmt(omega_a) + " (n <= 200); max sweep over " +
                    std::to_string(signals.size()) + " signals D=" + fmt(worst_d) + " (" + witness +
                    ") A=" + fmt(worst_a)};
}

Outcome van_rossum_bounds() {
    const double alphas[] = {0.5, 1.0, 2.0};
    const double horizons[] = {10.0, 20.0, 40.0};
    const double spacings[] = {0.25, 0.5, 1.0};
    bool ok = true;
    double min_margin = INFINITY;
    std::size_t rows = 0;
    for (const double alpha : alphas) {
        for (const double T : horizons) {
            for (const double dt : spacings) {
                const auto n = static_cast<std::size_t>(std::llround(T / dt));
                const EventSequence train = families::alternating(n, 1, dt, T);
                const double bound = std::exp(-alpha * dt) * (1.0 - std::exp(-alpha * dt));
                const double floor = van_rossum_floor(train, {alpha});
                // direct scan of |R| just before each event and at T
                double scanned = INFINITY;
                const EventSequence none(T);
                for (std::size_t k = 1; k <= n; ++k) {
                    const double t = k < n ? std::nextafter(train.times()[k], 0.0) : T;
                    scanned = std::min(scanned, std::fabs(oracle::trace_difference(train, none, alpha, t)));
                }
                ok = ok && floor >= bound - 1e-9 && scanned >= bound - 1e-9;
                min_margin = std::min(min_margin, std::min(floor, scanned) - bound);
            }
        }
        const auto c = emdm_characterize(VanRossumMetric{{alpha}}, 160, horizons, spacings);
        for (const auto& r : c.growth) {
            ++rows;
            const double kappa = van_rossum_kappa(alpha, r.spacing);
            ok = ok && r.value >= kappa * r.horizon - 1e-9 && r.value <= r.horizon + 1e-9;
        }
        ok = ok && c.growth.size() == 9;
    }
    return {ok, "27 trains, min floor margin " + fmt(min_margin) + "; " + std::to_string(rows) +
                    " growth rows inside [kappa T, T]"};
}

Outcome victor_purpura_checks() {
    Rng rng(10);
    std::size_t bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto draw = [&] {
            const auto n = static_cast<std::size_t>(rng.integer(0, 20));
            std::vector<double> t;
            for (std::size_t k = 0; k < n; ++k) {
                t.push_back(rng.uniform(0.0, 1.0));
            }
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
            std::vector<double> v;
            for (std::size_t k = 0; k < t.size(); ++k) {
                v.push_back(static_cast<double>(rng.integer(1, 2)) * (rng.coin() ? 1.0 : -1.0));
            }
            return EventSequence(1.0, t, v);
        };
        const EventSequence a = draw();
        const EventSequence b = draw();
        double ap = 0, am = 0, bp = 0, bm = 0;
        for (double v : a.values()) {
            (v > 0 ? ap : am) += std::fabs(v);
        }
        for (double v : b.values()) {
            (v > 0 ? bp : bm) += std::fabs(v);
        }
        bad += victor_purpura(a, b, {0.0}) == std::fabs(ap - bp) + std::fabs(am - bm) ? 0 : 1;
    }
    double worst = 0.0;
    for (const double s : {0.5, 1.0, 4.0}) {
        for (const double dt : {0.01, 0.1, 0.37, 0.5, 1.0, 3.0, 7.5}) {
            const EventSequence a(10.0, std::vector<double>{1.0}, std::vector<double>{1});
            const EventSequence b(10.0, std::vector<double>{1.0 + dt}, std::vector<double>{1});
            worst = std::max(worst, std::fabs(victor_purpura(a, b, {s}) - std::min(2.0, s * dt)));
        }
    }
    return {bad == 0 && worst <= 1e-12, "1000 pairs at s=0, " + std::to_string(bad) +
                                            " off the counting formula; offset pairs max error " + fmt(worst)};
}

Outcome left_continuity() {
    const ContinuityReport r = left_continuity_probe(local_max_signal(), Threshold(1.0), 40);
    const bool ok = r.monotone && r.from_below && r.converges && r.stabilized_at.has_value() && r.control_drop;
    return {ok, "monotone " + std::string(r.monotone ? "yes" : "no") + ", stabilized at n=" +
                    (r.stabilized_at ? std::to_string(*r.stabilized_at) : std::string("never")) + ", final gap " +
                    fmt(r.final_gap) + ", control count " + std::to_string(r.control_count) + " vs " +
                    std::to_string(r.reference_times.size())};
}

Outcome coarse_surjectivity() {
    Rng rng(12);
    std::size_t bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double theta = rng.uniform(0.01, 2.0);
        const auto n = static_cast<std::size_t>(rng.integer(0, 60));
        const EventSequence eta = families::random_pure(rng, n, theta, rng.uniform(0.5, 10.0));
        bad += sod_sample(reconstruct(eta), Threshold(theta)) == eta ? 0 : 1;
    }
    const auto corpus = random_corpus(12, 50);
    const double c = qi_verify(corpus, Threshold(0.1), NormKind::discrepancy).c;
    return {bad == 0 && c == 0.0, "1000 pure sequences, " + std::to_string(bad) + " round-trip mismatches; C=" + fmt(c)};
}

Outcome homogeneity() {
    Rng rng(13);
    std::size_t bad = 0;
    double gap = 0.0;
    std::size_t exact = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Signal f = generate::random_walk(static_cast<std::uint64_t>(rng.integer(0, 1 << 30)),
                                               static_cast<int>(rng.integer(1, 20)), 0.5, rng.uniform(0.5, 5.0));
        const Threshold a(rng.uniform(0.02, 0.5));
        const Threshold b(rng.uniform(0.02, 0.5));
        const HomogeneityReport r = homogeneity_report(f, a, b);
        bad += r.holds ? 0 : 1;
        gap = std::max(gap, r.max_time_gap);
        exact += r.max_time_gap == 0.0 ? 1 : 0;
    }
    return {bad == 0, "1000 triples, " + std::to_string(bad) + " failures; " + std::to_string(exact) +
                          " bit-identical, max time gap " + fmt(gap)};
}

Outcome schreiber_conflation() {
    const SchreiberWitness w = schreiber_witness(20, {});
    const double d12 = discrepancy_norm(difference(w.sequences[0], w.sequences[1]));
    const double d34 = discrepancy_norm(difference(w.sequences[2], w.sequences[3]));
    const bool ok = std::fabs(w.s12 + 1.0) <= 1e-12 && std::fabs(w.s34 + 1.0) <= 1e-12 &&
                    std::fabs(w.d12 - w.d34) <= 1e-12 && d12 != d34;
    return {ok, "S12=" + fmt(w.s12) + " S34=" + fmt(w.s34) + ", d_S equal (" + fmt(w.d12) +
                    ") while d_D is " + fmt(d12) + " vs " + fmt(d34)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "quasi-isometry sandwich", quasi_isometry},
        {2, "asymptotic isometry", asymptotic_isometry_check},
        {3, "norm equivalence A/D", norm_equivalence},
        {4, "fast discrepancy vs brute force", fast_vs_oracle},
        {5, "max-max-sum counterexample", mmsn_counterexample},
        {6, "chain decomposition", chain_decomposition},
        {7, "transcription inequality", transcription_inequality},
        {8, "EMDM characterization", emdm_characterization},
        {9, "van Rossum bounds", van_rossum_bounds},
        {10, "Victor-Purpura", victor_purpura_checks},
        {11, "left-continuity", left_continuity},
        {12, "coarse surjectivity", coarse_surjectivity},
        {13, "homogeneity", homogeneity},
        {14, "Schreiber witness", schreiber_conflation},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
