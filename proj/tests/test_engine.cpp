#include <random>

#include <gtest/gtest.h>

#include "edgeidle/error.hpp"
#include "edgeidle/idle/engine.hpp"

using namespace edgeidle;
using namespace edgeidle::idle;

namespace {

IdleConfig with_capacity(std::size_t capacity, double fps = 10.0) {
    IdleConfig c;
    c.capacity = capacity;
    c.fps = fps;
    return c;
}

}  // namespace

TEST(IdleConfig, WindowDuration) {
    EXPECT_DOUBLE_EQ(with_capacity(15).window_seconds(), 1.5);
    EXPECT_DOUBLE_EQ(with_capacity(20).window_seconds(), 2.0);
    EXPECT_THROW(with_capacity(1).validate(), ValidationError);
    EXPECT_THROW(with_capacity(15, 0.0).validate(), ValidationError);
}

TEST(IdleEngine, StationaryWindowIsIdle) {
    IdleEngine e(with_capacity(15));
    const BBox b{10, 10, 50, 40};
    for (int f = 0; f < 14; ++f) EXPECT_FALSE(e.push_observation(TrackId{1}, b, f));
    const auto v = e.push_observation(TrackId{1}, b, 14);
    ASSERT_TRUE(v);
    EXPECT_EQ(v->features.mad_ad, 0.0);
    EXPECT_EQ(v->features.mad_cd, 0.0);
    EXPECT_EQ(v->features.n, 15u);
    EXPECT_EQ(v->state, IdleState::Idle);
    EXPECT_EQ(v->p, sigmoid(reference_model().beta0));
    EXPECT_EQ(v->first_frame, 0);
    EXPECT_EQ(v->last_frame, 14);
    EXPECT_EQ(v->window_index, 0u);
    EXPECT_EQ(e.buffered_observations(), 0u);
}

TEST(IdleEngine, TumblingWindowsAndGaps) {
    IdleEngine e(with_capacity(3));
    std::vector<IdleVerdict> got;
    for (std::int64_t f : {0, 1, 4, 5, 6, 9, 10}) {
        if (auto v = e.push_observation(TrackId{7}, {0, 0, 10, 10}, f)) got.push_back(*v);
    }
    ASSERT_EQ(got.size(), 2u);
    EXPECT_EQ(got[0].first_frame, 0);
    EXPECT_EQ(got[0].last_frame, 4);
    EXPECT_EQ(got[1].first_frame, 5);
    EXPECT_EQ(got[1].last_frame, 9);
    EXPECT_EQ(got[1].window_index, 1u);
    EXPECT_EQ(e.open_window(TrackId{7}), 2u);
}

TEST(IdleEngine, CapacityTwentyAtTenFpsGivesOneVerdictPerTwoSeconds) {
    IdleEngine e(with_capacity(20));
    std::vector<std::int64_t> verdict_frames;
    for (int f = 0; f < 200; ++f) {
        if (auto v = e.push_observation(TrackId{1}, {0, 0, 10, 10}, f)) verdict_frames.push_back(v->last_frame);
    }
    ASSERT_EQ(verdict_frames.size(), 10u);
    for (std::size_t i = 0; i < verdict_frames.size(); ++i) {
        EXPECT_EQ(verdict_frames[i], static_cast<std::int64_t>(20 * i + 19));
    }
}

TEST(IdleEngine, RejectsDuplicateAndOlderFrames) {
    IdleEngine e;
    e.push_observation(TrackId{1}, {0, 0, 10, 10}, 5);
    EXPECT_THROW(e.push_observation(TrackId{1}, {0, 0, 10, 10}, 5), DuplicateObservationError);
    EXPECT_THROW(e.push_observation(TrackId{1}, {0, 0, 10, 10}, 4), OrderingError);
    EXPECT_NO_THROW(e.push_observation(TrackId{2}, {0, 0, 10, 10}, 4));
    EXPECT_THROW(e.push_observation(TrackId{3}, {0, 0, 0, 10}, 4), ValidationError);
}

TEST(IdleEngine, DuplicateRejectedAcrossWindowBoundary) {
    IdleEngine e(with_capacity(2));
    e.push_observation(TrackId{1}, {0, 0, 10, 10}, 0);
    ASSERT_TRUE(e.push_observation(TrackId{1}, {0, 0, 10, 10}, 1));
    EXPECT_THROW(e.push_observation(TrackId{1}, {0, 0, 10, 10}, 1), DuplicateObservationError);
}

TEST(IdleEngine, DiscardDropsPartialWindow) {
    IdleEngine e(with_capacity(4));
    for (int f = 0; f < 6; ++f) e.push_observation(TrackId{1}, {0, 0, 10, 10}, f);
    const auto w = e.discard(TrackId{1});
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, 1u);
    EXPECT_EQ(e.live_buffers(), 0u);
    EXPECT_FALSE(e.discard(TrackId{1}));
    EXPECT_FALSE(e.discard(TrackId{99}));
}

TEST(IdleEngine, SnapshotRestoresState) {
    IdleEngine e(with_capacity(5));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0, 5);
    for (int f = 0; f < 7; ++f) {
        e.push_observation(TrackId{1}, {u(rng), u(rng), 10 + u(rng), 10}, f);
        e.push_observation(TrackId{2}, {u(rng), u(rng), 10, 10 + u(rng)}, f);
    }
    IdleEngine r(e.config(), e.snapshot());
    for (int f = 7; f < 10; ++f) {
        const BBox b{u(rng), 0, 10, 10};
        const auto va = e.push_observation(TrackId{1}, b, f);
        const auto vb = r.push_observation(TrackId{1}, b, f);
        ASSERT_EQ(va.has_value(), vb.has_value());
        if (va) {
            EXPECT_EQ(va->p, vb->p);
            EXPECT_EQ(va->features, vb->features);
        }
    }
}

TEST(IdleEngineProperty, VerdictCountIsFloorOfObservationsOverCapacity) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t B = 2 + rng() % 30;
        const std::int64_t T = static_cast<std::int64_t>(rng() % 400);
        IdleEngine e(with_capacity(B));
        std::size_t verdicts = 0;
        for (std::int64_t f = 0; f < T; ++f) {
            verdicts += e.push_observation(TrackId{1}, {0, 0, 10 + static_cast<double>(f % 3), 10}, f) ? 1 : 0;
        }
        EXPECT_EQ(verdicts, static_cast<std::size_t>(T) / B);
    }
}

TEST(IdleEngineProperty, StationaryVerdictEqualsOriginPredictionForAllSizes) {
    const double origin = classify_window({0.0, 0.0, 2}, reference_model()).p;
    for (std::size_t B = 2; B <= 40; ++B) {
        IdleEngine e(with_capacity(B));
        for (std::size_t f = 0; f < 3 * B; ++f) {
            if (auto v = e.push_observation(TrackId{3}, {5, 5, 20, 30}, static_cast<std::int64_t>(f))) {
                EXPECT_EQ(v->p, origin);
                EXPECT_EQ(v->state, IdleState::Idle);
            }
        }
    }
}
