#include "sodkit/analysis.hpp"

#include <gtest/gtest.h>

using namespace sodkit;

TEST(Certify, DiscrepancyIsEquivalentToItself) {
    const CertificationReport r = certify_norm(NormKind::discrepancy);
    EXPECT_TRUE(r.alt.holds);
    EXPECT_TRUE(r.same_sign.holds);
    EXPECT_TRUE(r.sweep.holds);
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.alt.estimate, 1.0);
    EXPECT_EQ(r.same_sign.estimate, 1.0);
    EXPECT_EQ(r.sweep.estimate, 1.0);
}

TEST(Certify, AlexiewiczIsEquivalent) {
    const CertificationReport r = certify_norm(NormKind::alexiewicz);
    EXPECT_TRUE(r.equivalent);
    EXPECT_EQ(r.alt.estimate, 1.0);
    EXPECT_EQ(r.same_sign.estimate, 1.0);
    EXPECT_LE(r.sweep.estimate, 2.0);
}

TEST(Certify, MaxMaxSumFailsOnlyTheSweep) {
    const CertificationReport r = certify_norm(NormKind::max_max_sum);
    EXPECT_TRUE(r.alt.holds);
    EXPECT_EQ(r.alt.estimate, 1.0);
    EXPECT_TRUE(r.same_sign.holds);
    EXPECT_EQ(r.same_sign.estimate, 1.0);
    EXPECT_FALSE(r.sweep.holds);
    EXPECT_FALSE(r.equivalent);
    EXPECT_EQ(r.sweep.witness.family, "mmsn");
    EXPECT_EQ(r.sweep.witness.norm_value, 1.0);
}

TEST(Certify, WitnessesReevaluate) {
    for (NormKind k : {NormKind::discrepancy, NormKind::alexiewicz, NormKind::max_max_sum}) {
        const CertificationReport r = certify_norm(k);
        for (const ConditionResult* c : {&r.alt, &r.same_sign, &r.sweep}) {
            EXPECT_EQ(reevaluate(k, *c), c->witness.value) << norm_name(k) << " " << c->name;
            EXPECT_EQ(norm(k, c->witness.sequence), c->witness.norm_value);
        }
    }
}

TEST(Certify, SweepLadderGrowsForMaxMaxSum) {
    FamilyConfig cfg;
    cfg.sizes = {4, 8, 16, 32};
    const CertificationReport r = certify_norm(NormKind::max_max_sum, cfg);
    ASSERT_EQ(r.sweep.ladder.size(), 4u);
    for (std::size_t i = 1; i < r.sweep.ladder.size(); ++i) {
        EXPECT_GT(r.sweep.ladder[i], r.sweep.ladder[i - 1]);
    }
}
