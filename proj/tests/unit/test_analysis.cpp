#include "sodkit/analysis.hpp"
#include "sodkit/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace sodkit;

namespace {

// Zigzag through the given node values at t = 1, 2, ..., then held.
Signal comb(const std::vector<double>& heights) {
    std::vector<double> t{0.0};
    std::vector<double> v{0.0};
    for (std::size_t k = 0; k < heights.size(); ++k) {
        t.push_back(static_cast<double>(k + 1));
        v.push_back(heights[k]);
    }
    return generate::piecewise_linear(static_cast<double>(heights.size() + 1), t, v);
}

const EventMetric kNorms[] = {NormKind::discrepancy, NormKind::alexiewicz, NormKind::max_max_sum};

} // namespace

TEST(Metrics, NamesAndDistances) {
    const EventSequence a(1.0, std::vector<double>{0.2, 0.4}, std::vector<double>{1, -1});
    const EventSequence b(1.0, std::vector<double>{0.2}, std::vector<double>{1});
    EXPECT_EQ(metric_name(NormKind::discrepancy), "D");
    EXPECT_EQ(distance(NormKind::discrepancy, a, b), 1.0);
    EXPECT_EQ(distance(VictorPurpuraMetric{}, a, b), 1.0);
    EXPECT_GT(distance(VanRossumMetric{}, a, b), 0.0);
    EXPECT_EQ(distance(SchreiberMetric{}, a, a), 0.0);
}

TEST(Families, Shapes) {
    const EventSequence alt = families::alternating(5, -1, 0.5, 3.0);
    ASSERT_EQ(alt.size(), 5u);
    EXPECT_EQ(alt.values()[0], -1.0);
    EXPECT_TRUE(is_alternating(alt));
    EXPECT_EQ(alt.times()[4], 2.0);

    const EventSequence m = families::mmsn(7);
    EXPECT_EQ(discrepancy_norm(m), 4.0);
    EXPECT_EQ(max_max_sum_norm(m), 1.0);

    const EventSequence d = families::dip(3);
    EXPECT_EQ(d.size(), 9u);
    EXPECT_EQ(discrepancy_norm(d), 6.0);
    EXPECT_EQ(alexiewicz_norm(d), 3.0);

    EXPECT_EQ(families::all_positive(4).size(), 4u);

    Rng rng(61);
    const EventSequence r = families::random_pure(rng, 50, 0.25, 2.0);
    EXPECT_EQ(r.size(), 50u);
    EXPECT_TRUE(is_pure(r, 0.25));
    EXPECT_GT(r.times()[0], 0.0);
}

TEST(Emdm, MonotoneSignalAtNonCriticalThresholdIsZero) {
    const Signal ramp = generate::ramp_plateau(1.0);
    const double thetas[] = {0.03, 0.07, 0.3};
    for (const EventMetric& m : kNorms) {
        EXPECT_EQ(emdm_sweep(ramp, m, thetas).lambda, 0.0);
    }
    EXPECT_NEAR(emdm_sweep(ramp, VanRossumMetric{{1.0}}, thetas).lambda, 0.0, 1e-6);
}

TEST(Emdm, MonotoneSignalAtCriticalThresholdLosesTheLastEvent) {
    // f(T) = 0.5 is a multiple of 0.1: any larger threshold drops one event
    const Signal ramp = generate::ramp_plateau(1.0);
    const double thetas[] = {0.1};
    const auto r = emdm_sweep(ramp, NormKind::discrepancy, thetas);
    EXPECT_EQ(r.lambda, 1.0);
    EXPECT_EQ(r.rows[0].events_at, 5u);
    EXPECT_EQ(r.rows[0].events_above, 4u);
}

TEST(Emdm, LocalMaximumGivesUnitJump) {
    const Signal f = local_max_signal();
    const double thetas[] = {1.0};
    const auto r = emdm_sweep(f, NormKind::discrepancy, thetas);
    EXPECT_EQ(r.lambda, 1.0);
    EXPECT_TRUE(r.rows[0].stabilized);
    const auto vr = emdm_sweep(f, VanRossumMetric{{1.0}}, thetas);
    EXPECT_GT(vr.lambda, 0.0);
    EXPECT_LE(vr.lambda, f.horizon());
}

TEST(Emdm, CharacterizationOfNormsIsOne) {
    const double horizons[] = {10.0};
    const double spacings[] = {1.0};
    EXPECT_EQ(emdm_characterize(NormKind::discrepancy, 200, horizons, spacings).value, 1.0);
    EXPECT_EQ(emdm_characterize(NormKind::alexiewicz, 200, horizons, spacings).value, 1.0);
    EXPECT_EQ(emdm_characterize(NormKind::max_max_sum, 200, horizons, spacings).value, 1.0);
}

TEST(Emdm, CombSweepsAgainstCharacterization) {
    // |f/theta - level index| < 1 at every threshold, so the two index walks
    // differ by at most 1: prefix sums of the normalized difference stay in
    // {-1, 0, 1}. That caps A at 1 and D at 2.
    const double horizons[] = {10.0};
    const double spacings[] = {1.0};
    const std::vector<std::vector<double>> shapes{
        {1, 0, 1, 0, 1}, {1, -1, 1, -1}, {2, 0, 2, -1, 1}, {0.5, 1.5, 0.5, 2}, {1, 1.5, 0}};
    const double thetas[] = {0.25, 0.5, 1.0, 1.5};
    const double omega_a = emdm_characterize(NormKind::alexiewicz, 100, horizons, spacings).value;
    for (const auto& s : shapes) {
        EXPECT_LE(emdm_sweep(comb(s), NormKind::alexiewicz, thetas).lambda, omega_a);
        EXPECT_LE(emdm_sweep(comb(s), NormKind::discrepancy, thetas).lambda, 2.0);
    }
}

TEST(Emdm, TouchingBothLevelsDoublesTheDiscrepancyJump) {
    // Phi_1 = {(1,+1), (1.5,-1), (2,-1)} while any larger threshold sees nothing
    const Signal f = comb({1, -1});
    const double thetas[] = {1.0};
    const auto r = emdm_sweep(f, NormKind::discrepancy, thetas);
    EXPECT_EQ(r.rows[0].events_at, 3u);
    EXPECT_EQ(r.rows[0].events_above, 0u);
    EXPECT_EQ(r.lambda, 2.0);
    EXPECT_EQ(emdm_sweep(f, NormKind::alexiewicz, thetas).lambda, 1.0);
}

TEST(Emdm, VanRossumGrowthTableBounds) {
    const double horizons[] = {10.0, 20.0, 40.0};
    const double spacings[] = {0.5, 1.0};
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto c = emdm_characterize(VanRossumMetric{{alpha}}, 200, horizons, spacings);
        ASSERT_FALSE(c.growth.empty());
        for (const auto& row : c.growth) {
            EXPECT_GE(row.value, row.lower - 1e-9);
            EXPECT_LE(row.value, row.upper + 1e-9);
            EXPECT_LE(row.value, row.horizon);
            EXPECT_NEAR(row.lower, van_rossum_kappa(alpha, row.spacing) * row.horizon, 1e-12);
        }
        // non-decreasing in T for each spacing
        for (double sp : spacings) {
            double prev = 0.0;
            for (const auto& row : c.growth) {
                if (row.spacing == sp) {
                    EXPECT_GE(row.value, prev);
                    prev = row.value;
                }
            }
        }
    }
}

TEST(Emdm, KappaClosedForm) {
    EXPECT_EQ(van_rossum_kappa(0.0, 1.0), 0.5);
    const double e = std::exp(-1.0);
    EXPECT_NEAR(van_rossum_kappa(1.0, 1.0), e * e * (1 - e) * (1 - e), 1e-15);
}

TEST(Qi, IdenticalPairsHaveNoViolations) {
    const Signal f = generate::random_walk(3, 10, 0.5, 1.0);
    const std::vector<SignalPair> corpus{{f, f}};
    const QiReport r = qi_verify(corpus, Threshold(0.1), NormKind::discrepancy);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_EQ(r.rows[0].dx, 0.0);
    EXPECT_EQ(r.rows[0].dy, 0.0);
}

TEST(Qi, RandomCorpusSandwich) {
    const auto corpus = random_corpus(42, 300);
    ASSERT_EQ(corpus.size(), 300u);
    for (double theta : {0.05, 0.1, 0.2, 0.5}) {
        for (NormKind k : {NormKind::discrepancy, NormKind::alexiewicz}) {
            const QiReport r = qi_verify(corpus, Threshold(theta), k);
            EXPECT_TRUE(r.bounds_apply);
            EXPECT_EQ(r.violations, 0u) << norm_name(k) << " " << theta;
            EXPECT_GE(r.a, 1.0);
            EXPECT_GE(r.b, 0.0);
            EXPECT_EQ(r.c, 0.0);
            // the fitted constants cover every trial
            for (const auto& t : r.rows) {
                EXPECT_LE(t.dx / r.a - r.b, t.dy + 1e-9);
                EXPECT_LE(t.dy, r.a * t.dx + r.b + 1e-9);
            }
            for (std::size_t i = 1; i < r.envelope.size(); ++i) {
                EXPECT_GE(r.envelope[i].dx, r.envelope[i - 1].dx);
                EXPECT_GE(r.envelope[i].rho1, r.envelope[i - 1].rho1);
                EXPECT_GE(r.envelope[i].rho2, r.envelope[i - 1].rho2);
            }
        }
    }
    const QiReport m = qi_verify(corpus, Threshold(0.1), NormKind::max_max_sum);
    EXPECT_FALSE(m.bounds_apply);
    EXPECT_EQ(m.violations, 0u);
}

TEST(Qi, CorpusIsDeterministic) {
    const auto a = random_corpus(7, 20);
    const auto b = random_corpus(7, 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].f, b[i].f);
        EXPECT_EQ(a[i].g, b[i].g);
    }
}

TEST(Qi, AsymptoticIsometry) {
    const SignalPair pair = isometry_reference_pair();
    EXPECT_EQ(diameter_norm(subtract(pair.f, pair.g)), 1.0);
    const double thetas[] = {0.2, 0.1, 0.05, 0.025, 0.0125};
    const auto rows = asymptotic_isometry(pair, thetas);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.within);
        EXPECT_LE(std::fabs(r.dy - 1.0), 4.0 * r.theta + 1e-12);
    }
    EXPECT_NEAR(rows.back().ratio, 1.0, 0.05);
}

TEST(Continuity, RampTimesIncreaseToTheLimit) {
    const Signal f = generate::piecewise_linear(1.0, std::vector<double>{0, 1}, std::vector<double>{0, 1});
    const ContinuityReport r = left_continuity_probe(f, Threshold(0.3), 30);
    EXPECT_TRUE(r.monotone);
    EXPECT_TRUE(r.from_below);
    EXPECT_TRUE(r.converges);
    ASSERT_TRUE(r.stabilized_at.has_value());
    EXPECT_EQ(r.reference_times.size(), 3u);
    // coarse steps fire more often; from the stabilization point on the count is fixed
    EXPECT_EQ(r.below.front().times.size(), 6u);
    for (const auto& step : r.below) {
        if (step.n >= *r.stabilized_at) {
            EXPECT_EQ(step.times.size(), 3u);
        }
    }
    EXPECT_FALSE(r.control_drop);
}

TEST(Continuity, LocalMaximumFromBothSides) {
    const Signal f = local_max_signal();
    const ContinuityReport r = left_continuity_probe(f, Threshold(1.0), 40);
    EXPECT_TRUE(r.monotone);
    EXPECT_TRUE(r.converges);
    ASSERT_TRUE(r.stabilized_at.has_value());
    EXPECT_EQ(r.reference_times.size(), 3u);
    EXPECT_TRUE(r.control_drop);
    EXPECT_LT(r.control_count, r.reference_times.size());
}

TEST(Continuity, ZeroSignal) {
    const ContinuityReport r = left_continuity_probe(Signal::zero(2.0), Threshold(0.5), 10);
    EXPECT_TRUE(r.reference_times.empty());
    for (const auto& step : r.below) {
        EXPECT_TRUE(step.times.empty());
    }
    EXPECT_FALSE(r.control_drop);
}

TEST(SchreiberWitness, ConflatesBothPairs) {
    for (std::size_t n : {4u, 10u, 40u}) {
        const SchreiberWitness w = schreiber_witness(n, {});
        EXPECT_NEAR(w.s12, -1.0, 1e-12);
        EXPECT_NEAR(w.s34, -1.0, 1e-12);
        EXPECT_NEAR(w.d12, w.d34, 1e-12);
        ASSERT_EQ(w.sequences.size(), 4u);
        // the pairs differ a lot in discrepancy
        EXPECT_GT(discrepancy_norm(w.sequences[0]), discrepancy_norm(w.sequences[2]));
    }
}
