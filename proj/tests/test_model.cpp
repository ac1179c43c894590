#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "edgeidle/error.hpp"
#include "edgeidle/idle/model.hpp"

using namespace edgeidle;
using namespace edgeidle::idle;

namespace {

// Computed independently with 30-digit arithmetic.
constexpr double kSigmoidBeta0 = 0.92138723539412265143506983;
constexpr double kBoundaryCd = 6.72844570033537990359;
constexpr double kPAtCd20 = 0.00772994092529505293;

}  // namespace

TEST(IdleModel, ReferenceCoefficients) {
    const IdleModel m = reference_model();
    EXPECT_EQ(m.beta0, 2.4613463131);
    EXPECT_EQ(m.beta1, -0.00136793);
    EXPECT_EQ(m.beta2, -0.36581202);
    EXPECT_EQ(m.positive_label, IdleState::Idle);
}

TEST(ClassifyWindow, OriginIsIdle) {
    const Classification c = classify_window({0.0, 0.0, 15}, reference_model());
    EXPECT_NEAR(c.p, kSigmoidBeta0, 1e-12);
    EXPECT_EQ(c.state, IdleState::Idle);
}

TEST(ClassifyWindow, LargeCentroidSpreadIsActive) {
    const Classification c = classify_window({0.0, 20.0, 15}, reference_model());
    EXPECT_NEAR(c.p, kPAtCd20, 1e-12);
    EXPECT_EQ(c.state, IdleState::Active);
}

TEST(ClassifyWindow, DecisionBoundary) {
    const IdleModel m = reference_model();
    EXPECT_NEAR(m.beta0 / -m.beta2, kBoundaryCd, 1e-12);
    EXPECT_NEAR(decision_value({0.0, kBoundaryCd, 15}, m), 0.0, 1e-12);
    EXPECT_EQ(classify_window({0.0, kBoundaryCd - 1e-6, 15}, m).state, IdleState::Idle);
    EXPECT_EQ(classify_window({0.0, kBoundaryCd + 1e-6, 15}, m).state, IdleState::Active);
}

TEST(ClassifyWindow, PositiveLabelConvention) {
    IdleModel m = reference_model();
    m.positive_label = IdleState::Active;
    const Classification c = classify_window({0.0, 0.0, 15}, m);
    EXPECT_EQ(c.state, IdleState::Active);  // the printed threshold rule, read literally
    EXPECT_NEAR(c.p, kSigmoidBeta0, 1e-12);
}

TEST(ClassifyWindow, ThresholdIsInclusive) {
    const Classification c = classify_window({0.0, 0.0, 2}, IdleModel{0.0, 0.0, 0.0, IdleState::Idle});
    EXPECT_EQ(c.p, 0.5);
    EXPECT_EQ(c.state, IdleState::Idle);
}

TEST(Sigmoid, SaturatesWithoutOverflow) {
    EXPECT_EQ(sigmoid(0.0), 0.5);
    EXPECT_GT(sigmoid(1e6), 0.0);
    EXPECT_LT(sigmoid(-1e6), 1.0);
    EXPECT_EQ(sigmoid(1e6), sigmoid(50.0));
    EXPECT_EQ(sigmoid(-1e6), sigmoid(-50.0));
    EXPECT_TRUE(std::isfinite(sigmoid(-1e300)));
    EXPECT_GT(sigmoid(-1e6), 0.0);
}

TEST(IdleModel, ValidateRejectsNonFinite) {
    IdleModel m = reference_model();
    m.beta1 = std::nan("");
    EXPECT_THROW(m.validate(), ValidationError);
}

TEST(IdleStateNames, RoundTrip) {
    EXPECT_EQ(to_string(IdleState::Idle), "idle");
    EXPECT_EQ(to_string(IdleState::Active), "active");
    EXPECT_EQ(idle_state_from_string("idle"), IdleState::Idle);
    EXPECT_EQ(idle_state_from_string("active"), IdleState::Active);
    EXPECT_THROW(idle_state_from_string("busy"), ValidationError);
    EXPECT_EQ(other(IdleState::Idle), IdleState::Active);
}

TEST(ClassifyProperty, MonotoneInEachFeature) {
    const IdleModel m = reference_model();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ad(0, 5000), cd(0, 30), step(0, 10);
    for (int i = 0; i < 2000; ++i) {
        const WindowFeatures f{ad(rng), cd(rng), 15};
        const double p = classify_window(f, m).p;
        EXPECT_LE(classify_window({f.mad_ad + 100 * step(rng), f.mad_cd, 15}, m).p, p);
        EXPECT_LE(classify_window({f.mad_ad, f.mad_cd + step(rng), 15}, m).p, p);
    }
}
