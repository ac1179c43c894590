#pragma once

#include <cstdint>
#include <vector>

#include "edgeidle/idle/model.hpp"
#include "edgeidle/sim/generator.hpp"

namespace edgeidle::sim {

inline constexpr double kDefaultIdleSpeed = 0.5;  // px per frame

struct OracleWindow {
    std::uint64_t entity_id = 0;
    std::int64_t first_frame = 0;
    std::int64_t last_frame = 0;
    idle::IdleState label = idle::IdleState::Idle;

    friend bool operator==(const OracleWindow&, const OracleWindow&) = default;
};

/// Idle iff, between every pair of consecutive frames in [first, last], the
/// true centroid moves less than eps_v and the true area changes less than
/// eps_v^2. Frames outside the ground truth are ignored.
idle::IdleState oracle_label_for_span(const GroundTruth& gt, std::uint64_t entity, std::int64_t first_frame,
                                      std::int64_t last_frame, double eps_v = kDefaultIdleSpeed);

/// Tumbling windows of `buffer` visible frames per entity, as a perfect
/// tracker would see them, each labeled with oracle_label_for_span.
/// Throws ValidationError when buffer < 2.
std::vector<OracleWindow> oracle_idle_labels(const GroundTruth& gt, std::size_t buffer,
                                             double eps_v = kDefaultIdleSpeed);

}  // namespace edgeidle::sim
