#include "edgeidle/tracker/byte_tracker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeidle/error.hpp"
#include "edgeidle/tracker/hungarian.hpp"

namespace edgeidle::tracker {
namespace {

// Matches tracks[track_idx] against dets[det_idx] on 1 - IoU. Returns the
// matched pairs (indices into the two lists) and removes them from both.
std::vector<std::pair<std::size_t, std::size_t>> associate(const std::vector<Track>& tracks,
                                                           std::vector<std::size_t>& track_idx,
                                                           std::span<const Detection> dets,
                                                           std::vector<std::size_t>& det_idx,
                                                           const TrackerConfig& config) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (track_idx.empty() || det_idx.empty()) {
        return pairs;
    }
    CostMatrix cost(track_idx.size(), det_idx.size());
    for (std::size_t r = 0; r < track_idx.size(); ++r) {
        const Track& t = tracks[track_idx[r]];
        const BBox predicted = to_bbox(t.kalman);
        for (std::size_t c = 0; c < det_idx.size(); ++c) {
            const Detection& d = dets[det_idx[c]];
            if (config.class_gated && d.label != t.label) {
                cost(r, c) = std::numeric_limits<double>::infinity();
            } else {
                cost(r, c) = 1.0 - bbox_iou(predicted, d.bbox);
            }
        }
    }
    const Assignment assignment = hungarian_assign(cost, 1.0 - config.match_thresh);

    std::vector<std::size_t> rest_tracks;
    std::vector<std::size_t> rest_dets;
    for (auto [r, c] : assignment.matches) {
        pairs.emplace_back(track_idx[r], det_idx[c]);
    }
    for (std::size_t r : assignment.unmatched_rows) rest_tracks.push_back(track_idx[r]);
    for (std::size_t c : assignment.unmatched_cols) rest_dets.push_back(det_idx[c]);
    track_idx = std::move(rest_tracks);
    det_idx = std::move(rest_dets);
    return pairs;
}

}  // namespace

void TrackerConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("tracker config: " + msg); };
    if (!(high_thresh > 0.0 && high_thresh <= 1.0)) fail("high_thresh must be in (0, 1]");
    if (!(low_thresh >= 0.0 && low_thresh < high_thresh)) fail("low_thresh must be in [0, high_thresh)");
    if (!std::isfinite(new_track_thresh)) fail("new_track_thresh must be finite");
    if (!(match_thresh >= 0.0 && match_thresh <= 1.0)) fail("match_thresh must be in [0, 1]");
    if (track_buffer < 1) fail("track_buffer must be >= 1");
    if (!(min_box_area >= 0.0) || !std::isfinite(min_box_area)) fail("min_box_area must be >= 0");
}

ByteTracker::ByteTracker(TrackerConfig config) : config_(config) { config_.validate(); }

ByteTracker::ByteTracker(TrackerSnapshot snapshot)
    : config_(snapshot.config),
      tracks_(std::move(snapshot.tracks)),
      next_id_(snapshot.next_id),
      last_frame_(snapshot.last_frame) {
    config_.validate();
    for (const Track& t : tracks_) {
        if (t.id.value == 0 || t.id.value >= next_id_ || t.state == TrackState::Terminated) {
            throw ValidationError("tracker snapshot: inconsistent track " + std::to_string(t.id.value));
        }
    }
}

TrackerSnapshot ByteTracker::snapshot() const { return {config_, tracks_, next_id_, last_frame_}; }

void ByteTracker::update_track(Track& track, const Detection& det, std::int64_t frame_index) {
    track.kalman = kalman_update(track.kalman, det.bbox);
    track.last_bbox = det.bbox;
    track.last_confidence = det.confidence;
    track.frames_since_update = 0;
    track.last_update_frame = frame_index;
    if (!config_.class_gated) {
        track.label = det.label;
    }
}

std::vector<TrackedObject> ByteTracker::step(std::span<const Detection> detections, std::int64_t frame_index) {
    if (frame_index < 0) {
        throw ValidationError("frame index must be nonnegative");
    }
    if (last_frame_ && frame_index <= *last_frame_) {
        throw OrderingError("frame " + std::to_string(frame_index) + " does not follow frame " +
                            std::to_string(*last_frame_));
    }
    const bool first_step = !last_frame_.has_value();
    const std::int64_t elapsed = first_step ? 1 : frame_index - *last_frame_;
    last_frame_ = frame_index;
    terminated_.clear();

    std::vector<std::size_t> high;
    std::vector<std::size_t> low;
    for (std::size_t i = 0; i < detections.size(); ++i) {
        const Detection& d = detections[i];
        require_valid(d.bbox, "detection");
        if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
            throw ValidationError("detection confidence must be in [0, 1]");
        }
        if (d.frame_index != frame_index) {
            throw OrderingError("detection for frame " + std::to_string(d.frame_index) + " passed to frame " +
                                std::to_string(frame_index));
        }
        if (d.confidence < config_.low_thresh || bbox_area(d.bbox) < config_.min_box_area) {
            continue;
        }
        (d.confidence >= config_.high_thresh ? high : low).push_back(i);
    }

    const std::int64_t predict_steps = std::min<std::int64_t>(elapsed, config_.track_buffer + 1);
    for (Track& t : tracks_) {
        for (std::int64_t k = 0; k < predict_steps; ++k) {
            if (t.state != TrackState::Active) {
                t.kalman.mean(7) = 0.0;
            }
            t.kalman = kalman_predict(t.kalman);
        }
        t.age += elapsed;
        t.frames_since_update = frame_index - t.last_update_frame;
    }

    std::vector<std::size_t> pool;
    std::vector<std::size_t> tentative;
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
        (tracks_[i].state == TrackState::Tentative ? tentative : pool).push_back(i);
    }

    // First stage: high-confidence detections against Active and Lost tracks.
    for (auto [ti, di] : associate(tracks_, pool, detections, high, config_)) {
        update_track(tracks_[ti], detections[di], frame_index);
        tracks_[ti].state = TrackState::Active;
    }

    // Second stage: low-confidence detections only extend Active tracks.
    std::vector<std::size_t> active_rest;
    for (std::size_t ti : pool) {
        if (tracks_[ti].state == TrackState::Active && tracks_[ti].last_update_frame != frame_index) {
            active_rest.push_back(ti);
        }
    }
    for (auto [ti, di] : associate(tracks_, active_rest, detections, low, config_)) {
        update_track(tracks_[ti], detections[di], frame_index);
    }
    for (std::size_t ti : active_rest) {
        if (tracks_[ti].last_update_frame != frame_index) {
            tracks_[ti].state = TrackState::Lost;
        }
    }

    // Tentative tracks need a second consecutive high-confidence detection.
    for (auto [ti, di] : associate(tracks_, tentative, detections, high, config_)) {
        update_track(tracks_[ti], detections[di], frame_index);
        tracks_[ti].state = TrackState::Active;
    }
    for (std::size_t ti : tentative) {
        tracks_[ti].state = TrackState::Terminated;
    }

    for (std::size_t di : high) {
        const Detection& d = detections[di];
        if (d.confidence < config_.new_track_thresh) {
            continue;
        }
        Track t;
        t.id = TrackId{next_id_++};
        t.label = d.label;
        t.state = first_step ? TrackState::Active : TrackState::Tentative;
        t.kalman = kalman_init(d.bbox);
        t.last_bbox = d.bbox;
        t.last_confidence = d.confidence;
        t.start_frame = frame_index;
        t.last_update_frame = frame_index;
        tracks_.push_back(std::move(t));
    }

    for (Track& t : tracks_) {
        if (t.state == TrackState::Lost && t.frames_since_update > config_.track_buffer) {
            t.state = TrackState::Terminated;
        }
    }
    std::erase_if(tracks_, [this](const Track& t) {
        if (t.state == TrackState::Terminated) {
            terminated_.push_back(t.id);
            return true;
        }
        return false;
    });
    std::sort(terminated_.begin(), terminated_.end());

    std::vector<TrackedObject> out;
    for (const Track& t : tracks_) {
        if (t.state == TrackState::Active && t.last_update_frame == frame_index) {
            out.push_back({frame_index, t.id, t.label, t.last_bbox, t.last_confidence});
        }
    }
    // tracks_ is in creation order, which is id order.
    return out;
}

}  // namespace edgeidle::tracker
