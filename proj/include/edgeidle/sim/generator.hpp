#pragma once

#include <cstdint>
#include <vector>

#include "edgeidle/core/geometry.hpp"
#include "edgeidle/sim/scenario.hpp"

namespace edgeidle::sim {

struct GroundTruthObject {
    std::uint64_t entity_id = 0;  // index of the machine in the scenario
    ClassLabel label;
    BBox bbox;       // clipped to the frame; what a perfect detector would report
    BBox true_bbox;  // unclipped scripted box; the motion truth
    bool visible = false;
    bool clipped = false;

    friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

struct GroundTruthFrame {
    std::int64_t frame_index = 0;
    std::vector<GroundTruthObject> objects;  // one per machine, in entity order

    friend bool operator==(const GroundTruthFrame&, const GroundTruthFrame&) = default;
};

struct GroundTruth {
    double fps = 10.0;
    std::size_t entity_count = 0;
    std::vector<GroundTruthFrame> frames;  // frames[i].frame_index == i

    friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct DetectionFrame {
    std::int64_t frame_index = 0;
    std::vector<Detection> detections;

    friend bool operator==(const DetectionFrame&, const DetectionFrame&) = default;
};

struct SimulationResult {
    std::vector<DetectionFrame> frames;  // one entry per frame, possibly empty
    GroundTruth truth;
};

/// Scripted true boxes (unclipped) for one machine over `frame_count` frames.
std::vector<BBox> scripted_boxes(const MachineSpec& machine, std::int64_t frame_count, std::uint64_t motion_seed);

/// Deterministic function of `spec` (including its seed).
SimulationResult generate(const ScenarioSpec& spec);

}  // namespace edgeidle::sim
