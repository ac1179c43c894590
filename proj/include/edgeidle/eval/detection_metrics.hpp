#pragma once

#include <map>
#include <span>

#include "edgeidle/sim/generator.hpp"

namespace edgeidle::eval {

struct PrfScores {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct DetectionReport {
    PrfScores overall;
    std::map<int, PrfScores> per_class;  // keyed by class id
};

/// Per-frame, per-class greedy matching in descending confidence order; a
/// prediction is a true positive when its best unmatched same-class ground
/// truth box overlaps it with IoU >= iou_thresh.
DetectionReport detection_prf(std::span<const sim::DetectionFrame> predicted, const sim::GroundTruth& gt,
                              double iou_thresh = 0.5);

}  // namespace edgeidle::eval
