#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>

#include "edgeidle/sim/generator.hpp"
#include "edgeidle/tracker/byte_tracker.hpp"

namespace edgeidle::eval {

struct MotReport {
    double mota = 0.0;
    double motp = 0.0;  // mean IoU over matched pairs
    double idf1 = 0.0;
    double id_precision = 0.0;
    double id_recall = 0.0;
    std::size_t id_switches = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    std::size_t matches = 0;
    std::size_t ground_truth = 0;  // visible ground-truth boxes

    /// Entity owning >= 50% of each track's matched frames; empty when none does.
    std::map<TrackId, std::optional<std::uint64_t>> owners;
};

/// CLEAR-MOT and identity metrics of a tracked stream (ordered by frame)
/// against the visible ground truth. Matching keeps the previous frame's
/// correspondences while their IoU stays >= iou_match, then assigns the rest
/// by Hungarian matching on 1 - IoU.
MotReport mot_metrics(std::span<const tracker::TrackedObject> tracked, const sim::GroundTruth& gt,
                      double iou_match = 0.5);

}  // namespace edgeidle::eval
