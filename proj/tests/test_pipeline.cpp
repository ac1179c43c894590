#include <algorithm>

#include <gtest/gtest.h>

#include "edgeidle/error.hpp"
#include "edgeidle/eval/mot_metrics.hpp"
#include "edgeidle/pipeline/checkpoint.hpp"
#include "edgeidle/pipeline/pipeline.hpp"
#include "edgeidle/pipeline/sequencer.hpp"
#include "support.hpp"

using namespace edgeidle;
namespace et = edgeidle::testing;
using namespace edgeidle::pipeline;
using edgeidle::testing::machine;
using edgeidle::testing::stationary;
using edgeidle::testing::stop_go;
using io::RowState;

namespace {

io::TrackRecord row(std::int64_t frame, std::uint64_t track) {
    io::TrackRecord r;
    r.frame_index = frame;
    r.track_id = TrackId{track};
    r.bbox = {0, 0, 10, 10};
    r.confidence = 0.9;
    return r;
}

struct Run {
    std::vector<io::TrackRecord> rows;
    std::vector<idle::IdleVerdict> verdicts;
};

Run run(const std::vector<sim::DetectionFrame>& frames, const tracker::TrackerConfig& tc,
        const idle::IdleConfig& ic) {
    Run r;
    Pipeline p(tc, ic);
    for (const auto& f : frames) {
        p.process(f, r.rows);
        r.verdicts.insert(r.verdicts.end(), p.verdicts().begin(), p.verdicts().end());
    }
    p.finish(r.rows);
    return r;
}

sim::ScenarioSpec noisy_scenario(std::uint64_t seed, std::int64_t frames) {
    sim::ScenarioSpec s = et::grid_scenario(seed, 5, frames);
    s.noise = {0.1, 1.0, 0.75, 0.15, 0.3};
    s.machines[0].occlusions.push_back({40, 60});
    s.machines[1].occlusions.push_back({100, 150});
    return s;
}

// Model fitted on oracle-labeled windows of the mixed scenarios.
idle::IdleConfig fitted_config() {
    idle::IdleConfig cfg;
    std::vector<idle::LabeledWindow> train;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto w = et::labeled_windows_from(et::idle_mix_scenario(seed, 0.0, 0.0), cfg);
        train.insert(train.end(), w.begin(), w.end());
    }
    cfg.model = idle::fit_model(train);
    return cfg;
}

}  // namespace

TEST(Sequencer, EmitsInArrivalOrderOnceResolved) {
    Sequencer s;
    s.push(row(0, 1), 0);
    s.push(row(0, 2), 0);
    s.push(row(1, 2), 0);
    s.push(row(1, 1), 0);
    std::vector<io::TrackRecord> out;
    s.resolve(TrackId{2}, 0, idle::IdleState::Active, 0.25);
    s.drain(out);
    EXPECT_TRUE(out.empty());  // track 1 still open at the head
    s.discard(TrackId{1}, 0);
    s.drain(out);
    ASSERT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].track_id, TrackId{1});
    EXPECT_EQ(out[0].state, RowState::ActiveUnknown);
    EXPECT_FALSE(out[0].p.has_value());
    EXPECT_EQ(out[1].state, RowState::Active);
    EXPECT_EQ(out[1].p, 0.25);
    EXPECT_EQ(out[2].frame_index, 1);
    EXPECT_EQ(out[3].state, RowState::ActiveUnknown);
    EXPECT_EQ(s.pending(), 0u);
}

TEST(Sequencer, SnapshotRestoreKeepsResolutions) {
    Sequencer s;
    s.push(row(0, 1), 0);
    s.push(row(0, 2), 0);
    s.resolve(TrackId{2}, 0, idle::IdleState::Idle, 0.9);
    Sequencer r = Sequencer::restore(s.snapshot());
    r.resolve(TrackId{1}, 0, idle::IdleState::Active, 0.1);
    std::vector<io::TrackRecord> out;
    r.drain(out);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[1].state, RowState::Idle);
    EXPECT_EQ(out[1].p, 0.9);
}

TEST(Pipeline, StationaryMachinesAreIdle) {
    sim::ScenarioSpec s;
    s.frame_count = 90;
    s.machines.push_back(machine(kExcavator, {100, 100, 150, 100}, {stationary(90)}));
    s.machines.push_back(machine(kDumpTruck, {800, 500, 200, 120}, {stationary(90)}));
    const auto r = run(sim::generate(s).frames, {}, {});
    ASSERT_EQ(r.verdicts.size(), 12u);
    for (const auto& v : r.verdicts) {
        EXPECT_EQ(v.state, idle::IdleState::Idle);
        EXPECT_NEAR(v.p, 0.92138723539412265, 1e-12);
    }
    for (const auto& row : r.rows) EXPECT_EQ(row.state, RowState::Idle);
}

TEST(Pipeline, MovingMachinesAreActiveUnderFittedModel) {
    const idle::IdleConfig cfg = fitted_config();
    sim::ScenarioSpec s;
    s.frame_count = 90;
    s.machines.push_back(machine(kExcavator, {100, 100, 150, 100}, {stop_go(90, 30, 1.0, 5, 0)}));
    s.machines.push_back(machine(kDumpTruck, {100, 600, 200, 120}, {stop_go(90, 20, 1.0, 4, 3)}));
    const auto r = run(sim::generate(s).frames, {}, cfg);
    ASSERT_EQ(r.verdicts.size(), 12u);
    for (const auto& v : r.verdicts) EXPECT_EQ(v.state, idle::IdleState::Active) << v.features.mad_cd;
}

TEST(Pipeline, VerdictEveryCapacityFrames) {
    sim::ScenarioSpec s;
    s.frame_count = 75;
    s.machines.push_back(machine(kExcavator, {100, 100, 150, 100}, {stationary(75)}));
    idle::IdleConfig cfg;
    cfg.capacity = 15;
    cfg.fps = 10.0;
    EXPECT_EQ(cfg.window_seconds(), 1.5);
    const auto r = run(sim::generate(s).frames, {}, cfg);
    ASSERT_EQ(r.verdicts.size(), 5u);
    for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
        EXPECT_EQ(r.verdicts[i].window_index, i);
        EXPECT_EQ(r.verdicts[i].first_frame, static_cast<std::int64_t>(15 * i));
        EXPECT_EQ(r.verdicts[i].last_frame, static_cast<std::int64_t>(15 * i + 14));
        EXPECT_EQ(r.verdicts[i].features.n, 15u);
    }
}

TEST(Pipeline, PartialWindowsFlushAsUnknown) {
    sim::ScenarioSpec s;
    s.frame_count = 20;
    s.machines.push_back(machine(kExcavator, {100, 100, 150, 100}, {stationary(20)}));
    const auto r = run(sim::generate(s).frames, {}, {});
    ASSERT_EQ(r.rows.size(), 20u);
    for (int f = 0; f < 20; ++f) EXPECT_EQ(r.rows[f].state, f < 15 ? RowState::Idle : RowState::ActiveUnknown);
}

TEST(Pipeline, CheckpointResumeMatchesOnePass) {
    const auto frames = sim::generate(noisy_scenario(21, 240)).frames;
    const tracker::TrackerConfig tc;
    const idle::IdleConfig ic;
    const auto full = run(frames, tc, ic).rows;
    for (std::size_t cut : {1u, 37u, 120u, 239u}) {
        std::vector<io::TrackRecord> rows;
        Pipeline first(tc, ic);
        for (std::size_t i = 0; i < cut; ++i) first.process(frames[i], rows);
        const Checkpoint c = checkpoint_from_json(checkpoint_to_json(first.checkpoint()));
        Pipeline second(c);
        for (std::size_t i = cut; i < frames.size(); ++i) second.process(frames[i], rows);
        second.finish(rows);
        EXPECT_EQ(rows, full) << "cut " << cut;
    }
}

TEST(Pipeline, TrackThenIdleMatchesPipeline) {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        const auto frames = sim::generate(noisy_scenario(seed, 300)).frames;
        const tracker::TrackerConfig tc;
        const idle::IdleConfig ic;
        const auto joint = run_pipeline(frames, tc, ic);
        IdleStage stage(ic, tc.track_buffer + 1);
        std::vector<io::TrackRecord> split;
        for (const auto& r : run_tracker(frames, tc)) stage.push(r, split);
        stage.finish(split);
        EXPECT_EQ(split, joint) << "seed " << seed;
    }
}

TEST(Pipeline, ReconstructedVerdictsMatch) {
    const auto frames = sim::generate(noisy_scenario(8, 300)).frames;
    const idle::IdleConfig ic;
    auto r = run(frames, {}, ic);
    const auto rebuilt = reconstruct_verdicts(r.rows, ic.capacity);
    auto key = [](const idle::IdleVerdict& v) { return std::pair(v.last_frame, v.track_id.value); };
    std::sort(r.verdicts.begin(), r.verdicts.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    ASSERT_EQ(rebuilt.size(), r.verdicts.size());
    for (std::size_t i = 0; i < rebuilt.size(); ++i) {
        EXPECT_EQ(rebuilt[i].track_id, r.verdicts[i].track_id);
        EXPECT_EQ(rebuilt[i].first_frame, r.verdicts[i].first_frame);
        EXPECT_EQ(rebuilt[i].last_frame, r.verdicts[i].last_frame);
        EXPECT_EQ(rebuilt[i].window_index, r.verdicts[i].window_index);
        EXPECT_EQ(rebuilt[i].state, r.verdicts[i].state);
        EXPECT_NEAR(rebuilt[i].p, r.verdicts[i].p, 5e-7);
    }
}

TEST(Pipeline, ReconstructRejectsInconsistentChunks) {
    std::vector<io::TrackRecord> rows;
    for (int f = 0; f < 3; ++f) {
        auto r = row(f, 1);
        r.state = f == 2 ? RowState::Active : RowState::Idle;
        r.p = 0.7;
        rows.push_back(r);
    }
    EXPECT_THROW(reconstruct_verdicts(rows, 3), ValidationError);
    rows.pop_back();
    EXPECT_THROW(reconstruct_verdicts(rows, 3), ValidationError);  // partial chunk with a verdict
}

TEST(Pipeline, StateStaysBoundedOnLongStream) {
    sim::ScenarioSpec s = et::grid_scenario(31, 6, 5000);
    s.noise = {0.15, 1.0, 0.75, 0.15, 1.0};
    const auto frames = sim::generate(s).frames;
    Pipeline p({}, {});
    std::vector<io::TrackRecord> rows;
    StateSize peak;
    std::size_t emitted = 0;
    for (const auto& f : frames) {
        p.process(f, rows);
        emitted += rows.size();
        rows.clear();
        const StateSize z = p.state_size();
        peak.live_tracks = std::max(peak.live_tracks, z.live_tracks);
        peak.window_buffers = std::max(peak.window_buffers, z.window_buffers);
        peak.buffered_observations = std::max(peak.buffered_observations, z.buffered_observations);
        peak.pending_rows = std::max(peak.pending_rows, z.pending_rows);
        EXPECT_LE(z.window_buffers, z.live_tracks);
        EXPECT_LE(z.buffered_observations, z.window_buffers * 15);
    }
    EXPECT_GT(emitted, 25000u);
    EXPECT_LE(peak.live_tracks, 60u);
    EXPECT_LE(peak.pending_rows, 1500u);
}

TEST(Pipeline, SparseStreamMatchesDense) {
    sim::ScenarioSpec s = noisy_scenario(13, 300);
    s.machines[2].occlusions.push_back({0, 300});
    for (auto& m : s.machines) m.occlusions.push_back({180, 240});  // empty stretch longer than the buffer
    const auto dense = sim::generate(s).frames;
    std::vector<sim::DetectionFrame> sparse;
    for (const auto& f : dense) {
        if (!f.detections.empty()) sparse.push_back(f);
    }
    ASSERT_LT(sparse.size(), dense.size());
    EXPECT_EQ(run_pipeline(sparse, {}, {}), run_pipeline(dense, {}, {}));
    EXPECT_EQ(run_tracker(sparse, {}), run_tracker(dense, {}));
}

TEST(Pipeline, BackwardsFrameRejected) {
    Pipeline p({}, {});
    std::vector<io::TrackRecord> rows;
    p.process({5, {}}, rows);
    EXPECT_THROW(p.process({5, {}}, rows), OrderingError);
}
