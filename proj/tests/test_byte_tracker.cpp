#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "edgeidle/error.hpp"
#include "edgeidle/sim/generator.hpp"
#include "edgeidle/tracker/byte_tracker.hpp"
#include "support.hpp"

using namespace edgeidle;
using namespace edgeidle::tracker;

namespace {

Detection det(std::int64_t frame, BBox b, double conf = 0.9, ClassLabel label = kExcavator) {
    return {frame, b, conf, label};
}

std::vector<TrackedObject> step1(ByteTracker& t, std::int64_t frame, std::vector<Detection> dets) {
    for (auto& d : dets) d.frame_index = frame;
    return t.step(dets, frame);
}

const BBox kBox{100, 100, 80, 60};

}  // namespace

TEST(TrackerConfig, Validation) {
    TrackerConfig c;
    EXPECT_NO_THROW(c.validate());
    c.low_thresh = 0.6;
    EXPECT_THROW(c.validate(), ValidationError);
    c = {};
    c.track_buffer = 0;
    EXPECT_THROW(c.validate(), ValidationError);
    c = {};
    c.high_thresh = 1.5;
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(ByteTracker, FirstStepSpawnsAreActiveImmediately) {
    ByteTracker t;
    const auto out = step1(t, 0, {det(0, kBox)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].track_id, TrackId{1});
}

TEST(ByteTracker, LaterSpawnIsTentativeUntilSecondDetection) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    const BBox other{600, 400, 90, 70};
    const auto f1 = step1(t, 1, {det(1, kBox), det(1, other)});
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(t.tracks().back().state, TrackState::Tentative);
    const auto f2 = step1(t, 2, {det(2, kBox), det(2, other)});
    ASSERT_EQ(f2.size(), 2u);
    EXPECT_EQ(f2[1].track_id, TrackId{2});
    EXPECT_EQ(f2[1].bbox, other);
}

TEST(ByteTracker, UnconfirmedTentativeTrackIsTerminated) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    step1(t, 1, {det(1, kBox), det(1, {600, 400, 90, 70})});
    step1(t, 2, {det(2, kBox)});
    EXPECT_EQ(t.terminated(), std::vector<TrackId>{TrackId{2}});
    EXPECT_EQ(t.tracks().size(), 1u);
}

TEST(ByteTracker, TenFramesOneIdentity) {
    ByteTracker t;
    std::set<std::uint64_t> ids;
    for (int f = 0; f < 10; ++f) {
        for (const auto& o : step1(t, f, {det(f, translated(kBox, f, 0.5 * f))})) ids.insert(o.track_id.value);
    }
    EXPECT_EQ(ids, std::set<std::uint64_t>{1});
}

TEST(ByteTracker, OutputUsesDetectionBoxAndConfidence) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox, 0.95)});
    const BBox moved = translated(kBox, 2, 1);
    const auto out = step1(t, 1, {det(1, moved, 0.7)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].bbox, moved);
    EXPECT_EQ(out[0].confidence, 0.7);
    EXPECT_EQ(out[0].frame_index, 1);
}

TEST(ByteTracker, OcclusionShorterThanBufferKeepsId) {
    for (int gap : {1, 5, 29, 30}) {
        TrackerConfig cfg;
        ByteTracker t(cfg);
        int f = 0;
        for (; f < 10; ++f) step1(t, f, {det(f, kBox)});
        for (int k = 0; k < gap; ++k, ++f) EXPECT_TRUE(step1(t, f, {}).empty());
        const auto out = step1(t, f, {det(f, kBox)});
        ASSERT_EQ(out.size(), 1u) << "gap " << gap;
        EXPECT_EQ(out[0].track_id, TrackId{1}) << "gap " << gap;
    }
}

TEST(ByteTracker, OcclusionLongerThanBufferGetsNewId) {
    ByteTracker t;
    int f = 0;
    for (; f < 10; ++f) step1(t, f, {det(f, kBox)});
    for (int k = 0; k < 31; ++k, ++f) step1(t, f, {});
    EXPECT_TRUE(t.tracks().empty());
    EXPECT_TRUE(step1(t, f, {det(f, kBox)}).empty());  // Tentative again
    ++f;
    const auto out = step1(t, f, {det(f, kBox)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].track_id, TrackId{2});
}

TEST(ByteTracker, FrameGapBehavesLikeEmptyFrames) {
    ByteTracker a;
    ByteTracker b;
    for (int f = 0; f < 5; ++f) {
        step1(a, f, {det(f, translated(kBox, 3.0 * f, 0))});
        step1(b, f, {det(f, translated(kBox, 3.0 * f, 0))});
    }
    for (int f = 5; f < 12; ++f) step1(a, f, {});
    const auto oa = step1(a, 12, {det(12, translated(kBox, 36, 0))});
    const auto ob = step1(b, 12, {det(12, translated(kBox, 36, 0))});
    EXPECT_EQ(oa, ob);
    EXPECT_EQ(a.tracks()[0].frames_since_update, b.tracks()[0].frames_since_update);
}

TEST(ByteTracker, LostTrackFrameCountStaysWithinBuffer) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    for (int f = 1; f <= 40; ++f) {
        step1(t, f, {});
        for (const auto& tr : t.tracks()) {
            if (tr.state == TrackState::Lost) {
                EXPECT_LE(tr.frames_since_update, t.config().track_buffer);
            }
        }
    }
}

TEST(ByteTracker, LowConfidenceExtendsActiveTrack) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    const auto out = step1(t, 1, {det(1, kBox, 0.3)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].confidence, 0.3);
}

TEST(ByteTracker, LowConfidenceDoesNotRecoverLostTrack) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    step1(t, 1, {});
    EXPECT_EQ(t.tracks()[0].state, TrackState::Lost);
    EXPECT_TRUE(step1(t, 2, {det(2, kBox, 0.3)}).empty());
    EXPECT_EQ(step1(t, 3, {det(3, kBox, 0.9)}).at(0).track_id, TrackId{1});
}

TEST(ByteTracker, StageOneMatchIsNotReusedInStageTwo) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    const auto out = step1(t, 1, {det(1, kBox, 0.9), det(1, translated(kBox, 1, 0), 0.3)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].confidence, 0.9);
    EXPECT_EQ(t.tracks()[0].state, TrackState::Active);
}

TEST(ByteTracker, FiltersLowConfidenceAndTinyBoxes) {
    ByteTracker t;
    EXPECT_TRUE(step1(t, 0, {det(0, kBox, 0.05), det(0, {0, 0, 3, 3})}).empty());
    EXPECT_TRUE(t.tracks().empty());
}

TEST(ByteTracker, MidConfidenceHcdDoesNotSpawn) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox, 0.55)});
    EXPECT_TRUE(t.tracks().empty());
}

TEST(ByteTracker, ClassGating) {
    ByteTracker gated;
    step1(gated, 0, {det(0, kBox, 0.9, kExcavator)});
    EXPECT_TRUE(step1(gated, 1, {det(1, kBox, 0.9, kDumpTruck)}).empty());

    TrackerConfig cfg;
    cfg.class_gated = false;
    ByteTracker open(cfg);
    step1(open, 0, {det(0, kBox, 0.9, kExcavator)});
    const auto out = step1(open, 1, {det(1, kBox, 0.9, kDumpTruck)});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].track_id, TrackId{1});
}

TEST(ByteTracker, MatchThresholdIsMinimumIou) {
    ByteTracker t;
    step1(t, 0, {det(0, kBox)});
    // IoU of an 80-wide box shifted by 20 px is 60/100 = 0.6 < 0.8.
    EXPECT_TRUE(step1(t, 1, {det(1, translated(kBox, 20, 0))}).empty());
}

TEST(ByteTracker, RejectsOutOfOrderFrames) {
    ByteTracker t;
    step1(t, 5, {});
    EXPECT_THROW(step1(t, 5, {}), OrderingError);
    EXPECT_THROW(step1(t, 4, {}), OrderingError);
    std::vector<Detection> wrong{det(9, kBox)};
    EXPECT_THROW(t.step(wrong, 6), OrderingError);
}

TEST(ByteTracker, SnapshotResumesIdentically) {
    const auto sim = sim::generate(edgeidle::testing::grid_scenario(3, 4, 120));
    ByteTracker a;
    std::vector<TrackedObject> full, resumed;
    std::optional<ByteTracker> b;
    for (const auto& f : sim.frames) {
        auto o = a.step(f.detections, f.frame_index);
        full.insert(full.end(), o.begin(), o.end());
        if (f.frame_index == 60) b.emplace(a.snapshot());
        if (f.frame_index > 60) {
            auto r = b->step(f.detections, f.frame_index);
            resumed.insert(resumed.end(), r.begin(), r.end());
        }
    }
    std::vector<TrackedObject> tail;
    for (const auto& o : full) if (o.frame_index > 60) tail.push_back(o);
    EXPECT_EQ(resumed, tail);
}

TEST(ByteTrackerProperty, LowConfidenceDetectionsNeverSpawn) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(0, 1000), conf(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ByteTracker t;
        std::uint64_t spawners = 0;
        for (int f = 0; f < 30; ++f) {
            std::vector<Detection> dets;
            const int n = static_cast<int>(rng() % 6);
            for (int i = 0; i < n; ++i) {
                const double c = conf(rng);
                dets.push_back(det(f, {pos(rng), pos(rng), 50, 40}, c, ClassLabel{static_cast<int>(rng() % 3)}));
                if (c >= t.config().new_track_thresh) ++spawners;
            }
            t.step(dets, f);
        }
        // Every id was created by a detection at or above new_track_thresh.
        EXPECT_LE(t.snapshot().next_id - 1, spawners);
    }
}

TEST(ByteTrackerProperty, IdsUniquePerFrameAndNeverReused) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        sim::ScenarioSpec spec = edgeidle::testing::grid_scenario(seed, 5, 200);
        spec.noise.miss_prob = 0.2;
        spec.noise.bbox_jitter_std = 2.0;
        spec.noise.false_positive_rate = 1.0;
        spec.noise.confidence_std = 0.2;
        const auto sim = sim::generate(spec);
        ByteTracker t;
        std::map<std::uint64_t, std::int64_t> last_seen;
        std::set<std::uint64_t> terminated;
        for (const auto& f : sim.frames) {
            std::set<std::uint64_t> frame_ids;
            for (const auto& o : t.step(f.detections, f.frame_index)) {
                EXPECT_TRUE(frame_ids.insert(o.track_id.value).second);
                EXPECT_FALSE(terminated.count(o.track_id.value));
                last_seen[o.track_id.value] = f.frame_index;
            }
            for (TrackId id : t.terminated()) terminated.insert(id.value);
        }
    }
}

TEST(ByteTrackerProperty, Deterministic) {
    sim::ScenarioSpec spec = edgeidle::testing::grid_scenario(8, 6, 150);
    spec.noise.bbox_jitter_std = 3.0;
    spec.noise.false_positive_rate = 2.0;
    const auto sim = sim::generate(spec);
    auto run = [&] {
        ByteTracker t;
        std::vector<TrackedObject> out;
        for (const auto& f : sim.frames) {
            auto o = t.step(f.detections, f.frame_index);
            out.insert(out.end(), o.begin(), o.end());
        }
        return out;
    };
    EXPECT_EQ(run(), run());
}
