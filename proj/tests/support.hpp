#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/idle/fit.hpp"
#include "edgeidle/sim/generator.hpp"
#include "edgeidle/sim/scenario.hpp"

namespace edgeidle::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

sim::MachineSpec machine(ClassLabel label, BBox initial, std::vector<sim::MotionSegment> segments);
sim::MotionSegment stationary(std::int64_t frames, double jitter = 0.0);
sim::MotionSegment linear(std::int64_t frames, double vx, double vy);
sim::MotionSegment stop_go(std::int64_t frames, std::int64_t period, double duty, double vx, double vy);

/// `count` machines (2..6 for the clean-tracking criterion) on a grid of
/// disjoint cells, each with a random mix of Stationary and StopGo segments
/// that never leaves its cell.
sim::ScenarioSpec grid_scenario(std::uint64_t seed, int count, std::int64_t frames);

/// Mixed Stationary(0) / Stationary(jitter) / StopGo scenario used to
/// produce labeled windows; motion parameters drawn from `seed`.
sim::ScenarioSpec idle_mix_scenario(std::uint64_t seed, double bbox_jitter, double miss_prob);

/// Runs the pipeline on `spec` and joins complete windows to oracle labels;
/// returns the labeled features of windows owned by a real entity.
std::vector<idle::LabeledWindow> labeled_windows_from(const sim::ScenarioSpec& spec, const idle::IdleConfig& cfg);

}  // namespace edgeidle::testing
