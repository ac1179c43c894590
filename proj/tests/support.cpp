#include "support.hpp"

#include <atomic>
#include <random>

#include "edgeidle/eval/idle_metrics.hpp"
#include "edgeidle/eval/mot_metrics.hpp"
#include "edgeidle/pipeline/pipeline.hpp"
#include "edgeidle/sim/oracle.hpp"

namespace edgeidle::testing {

TempDir::TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("edgeidle-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

sim::MachineSpec machine(ClassLabel label, BBox initial, std::vector<sim::MotionSegment> segments) {
    sim::MachineSpec m;
    m.label = label;
    m.initial = initial;
    m.script.segments = std::move(segments);
    return m;
}

sim::MotionSegment stationary(std::int64_t frames, double jitter) { return {frames, sim::Stationary{jitter}}; }

sim::MotionSegment linear(std::int64_t frames, double vx, double vy) { return {frames, sim::Linear{vx, vy}}; }

sim::MotionSegment stop_go(std::int64_t frames, std::int64_t period, double duty, double vx, double vy) {
    return {frames, sim::StopGo{period, duty, vx, vy}};
}

sim::ScenarioSpec grid_scenario(std::uint64_t seed, int count, std::int64_t frames) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    sim::ScenarioSpec s;
    s.frame_count = frames;
    s.seed = seed;
    // 3 x 2 grid of 640 x 540 cells; a box plus its +-60 px excursion stays inside its cell.
    for (int i = 0; i < count; ++i) {
        const double cell_x = 640.0 * (i % 3);
        const double cell_y = 540.0 * (i / 3);
        const double w = 120.0 + 80.0 * unit(rng);
        const double h = 90.0 + 60.0 * unit(rng);
        const BBox box{cell_x + 100.0 + 100.0 * unit(rng), cell_y + 100.0 + 100.0 * unit(rng), w, h};
        std::vector<sim::MotionSegment> segs;
        for (std::int64_t t = 0, k = 0; t < frames; t += 60, ++k) {
            const double dir = (k % 2 == 0) ? 1.0 : -1.0;
            if (unit(rng) < 0.4) {
                segs.push_back(stationary(60));
            } else {
                const double v = 1.0 + unit(rng);
                const bool horizontal = unit(rng) < 0.5;
                segs.push_back(stop_go(60, 30, 0.5, horizontal ? dir * v : 0.0, horizontal ? 0.0 : dir * v));
            }
        }
        s.machines.push_back(machine(ClassLabel{static_cast<int>(rng() % 3)}, box, std::move(segs)));
    }
    return s;
}

sim::ScenarioSpec idle_mix_scenario(std::uint64_t seed, double bbox_jitter, double miss_prob) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    sim::ScenarioSpec s;
    s.frame_count = 300;
    s.seed = seed;
    s.noise.bbox_jitter_std = bbox_jitter;
    s.noise.miss_prob = miss_prob;
    for (int i = 0; i < 4; ++i) {
        const double cell_x = 960.0 * (i % 2);
        const double cell_y = 540.0 * (i / 2);
        const BBox box{cell_x + 300.0, cell_y + 180.0, 180.0 + 60.0 * unit(rng), 130.0 + 40.0 * unit(rng)};
        std::vector<sim::MotionSegment> segs;
        for (std::int64_t t = 0, k = 0; t < s.frame_count; t += 60, ++k) {
            const double pick = unit(rng);
            const double dir = (k % 2 == 0) ? 1.0 : -1.0;
            if (pick < 0.35) {
                segs.push_back(stationary(60));
            } else if (pick < 0.6) {
                segs.push_back(stationary(60, 3.0 + 3.0 * unit(rng)));
            } else {
                const std::int64_t period = 20 + static_cast<std::int64_t>(rng() % 21);
                segs.push_back(stop_go(60, period, 0.4 + 0.4 * unit(rng), dir * (2.0 + 2.0 * unit(rng)), 0.0));
            }
        }
        s.machines.push_back(machine(ClassLabel{static_cast<int>(rng() % 3)}, box, std::move(segs)));
    }
    return s;
}

std::vector<idle::LabeledWindow> labeled_windows_from(const sim::ScenarioSpec& spec, const idle::IdleConfig& cfg) {
    const sim::SimulationResult sim = sim::generate(spec);
    pipeline::Pipeline p(tracker::TrackerConfig{}, cfg);
    std::vector<io::TrackRecord> rows;
    std::vector<idle::IdleVerdict> verdicts;
    for (const auto& f : sim.frames) {
        p.process(f, rows);
        verdicts.insert(verdicts.end(), p.verdicts().begin(), p.verdicts().end());
    }
    p.finish(rows);
    const auto tracked = pipeline::to_tracked(rows);
    const eval::MotReport mot = eval::mot_metrics(tracked, sim.truth);
    std::vector<idle::LabeledWindow> out;
    for (const auto& j : eval::join_windows(verdicts, mot.owners, sim.truth, sim::kDefaultIdleSpeed)) {
        if (j.truth) {
            out.push_back({j.verdict.features, *j.truth});
        }
    }
    return out;
}

}  // namespace edgeidle::testing
