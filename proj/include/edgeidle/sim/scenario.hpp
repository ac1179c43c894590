#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "edgeidle/core/geometry.hpp"

namespace edgeidle::sim {

/// Machine holds its anchor box; every frame the true box is the anchor with
/// independent N(0, jitter_std) offsets on x, y, w and h (in-place work).
struct Stationary {
    double jitter_std = 0.0;
};

/// Constant velocity in pixels per frame.
struct Linear {
    double vx = 0.0;
    double vy = 0.0;
};

/// Repeating cycle of `period` frames: stopped for the first (1 - duty)
/// fraction, then moving along (vx, vy) with a 2 sin^2 speed profile whose
/// mean speed is |(vx, vy)|.
struct StopGo {
    std::int64_t period = 30;
    double duty = 0.5;
    double vx = 0.0;
    double vy = 0.0;
};

using MotionMode = std::variant<Stationary, Linear, StopGo>;

struct MotionSegment {
    std::int64_t duration_frames = 1;
    MotionMode mode;
};

/// Segments run back to back; after the last one the machine stays put.
struct MotionScript {
    std::vector<MotionSegment> segments;
};

/// Half-open frame interval [begin, end).
struct FrameInterval {
    std::int64_t begin = 0;
    std::int64_t end = 0;

    bool contains(std::int64_t f) const noexcept { return f >= begin && f < end; }
};

struct MachineSpec {
    ClassLabel label;
    BBox initial;
    MotionScript script;
    std::vector<FrameInterval> occlusions;
};

struct NoiseSpec {
    double miss_prob = 0.0;
    double bbox_jitter_std = 0.0;
    double confidence_mean = 0.9;
    double confidence_std = 0.0;
    double false_positive_rate = 0.0;  // expected clutter boxes per frame
};

struct ScenarioSpec {
    std::int64_t frame_count = 0;
    double frame_width = 1920.0;
    double frame_height = 1080.0;
    double fps = 10.0;
    std::vector<MachineSpec> machines;
    NoiseSpec noise;
    std::uint64_t seed = 0;

    /// Throws ValidationError whose message starts with the offending field path.
    void validate() const;
};

/// Step multiplier of a StopGo cycle at frame `phase` (0 <= phase < period).
double stop_go_step(const StopGo& mode, std::int64_t phase) noexcept;

}  // namespace edgeidle::sim
