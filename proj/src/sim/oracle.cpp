#include "edgeidle/sim/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "edgeidle/error.hpp"

namespace edgeidle::sim {

idle::IdleState oracle_label_for_span(const GroundTruth& gt, std::uint64_t entity, std::int64_t first_frame,
                                      std::int64_t last_frame, double eps_v) {
    const std::int64_t lo = std::max<std::int64_t>(first_frame, 0);
    const std::int64_t hi = std::min<std::int64_t>(last_frame, static_cast<std::int64_t>(gt.frames.size()) - 1);
    const double eps_a = eps_v * eps_v;
    for (std::int64_t f = lo; f < hi; ++f) {
        const auto& a = gt.frames[static_cast<std::size_t>(f)].objects;
        const auto& b = gt.frames[static_cast<std::size_t>(f + 1)].objects;
        if (entity >= a.size() || entity >= b.size()) {
            throw ValidationError("oracle: unknown entity " + std::to_string(entity));
        }
        const BBox& p = a[entity].true_bbox;
        const BBox& q = b[entity].true_bbox;
        const Point cp = bbox_centroid(p);
        const Point cq = bbox_centroid(q);
        if (std::hypot(cq.x - cp.x, cq.y - cp.y) >= eps_v || std::abs(bbox_area(q) - bbox_area(p)) >= eps_a) {
            return idle::IdleState::Active;
        }
    }
    return idle::IdleState::Idle;
}

std::vector<OracleWindow> oracle_idle_labels(const GroundTruth& gt, std::size_t buffer, double eps_v) {
    if (buffer < 2) {
        throw ValidationError("oracle_idle_labels: buffer must be >= 2");
    }
    std::vector<OracleWindow> out;
    for (std::uint64_t e = 0; e < gt.entity_count; ++e) {
        std::size_t filled = 0;
        std::int64_t first = 0;
        for (const GroundTruthFrame& frame : gt.frames) {
            if (e >= frame.objects.size() || !frame.objects[e].visible) {
                continue;
            }
            if (filled == 0) {
                first = frame.frame_index;
            }
            if (++filled == buffer) {
                out.push_back({e, first, frame.frame_index, oracle_label_for_span(gt, e, first, frame.frame_index, eps_v)});
                filled = 0;
            }
        }
    }
    return out;
}

}  // namespace edgeidle::sim
