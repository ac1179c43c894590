#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/sim/generator.hpp"

namespace edgeidle::eval {

/// Binary confusion counts with Idle as the positive class.
struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + fp + tn + fn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct IdleReport {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    ConfusionCounts counts;
};

/// Scores from counts. Undefined ratios (zero denominators) are reported as 0.
IdleReport idle_report(const ConfusionCounts& counts);

/// One verdict joined to its ground truth. `truth` is empty when the verdict's
/// track has no owning entity (clutter-born).
struct JoinedWindow {
    idle::IdleVerdict verdict;
    std::optional<std::uint64_t> entity;
    std::optional<idle::IdleState> truth;
};

/// Clutter verdicts count as errors: asserting Idle is a false positive,
/// asserting Active a false negative. Throws EmptyEvaluationError on no input.
IdleReport idle_metrics(std::span<const JoinedWindow> joined);

/// Labels every verdict with the oracle label of its owner entity over the
/// verdict's exact frame span.
std::vector<JoinedWindow> join_windows(std::span<const idle::IdleVerdict> verdicts,
                                       const std::map<TrackId, std::optional<std::uint64_t>>& owners,
                                       const sim::GroundTruth& gt, double eps_v);

}  // namespace edgeidle::eval
