#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edgeidle/core/geometry.hpp"
#include "edgeidle/tracker/kalman_filter.hpp"

namespace edgeidle::tracker {

struct TrackerConfig {
    double high_thresh = 0.5;       // detections at or above are high-confidence
    double low_thresh = 0.1;        // detections below are discarded
    double new_track_thresh = 0.6;  // minimum confidence to spawn a track
    double match_thresh = 0.8;      // minimum IoU for an accepted association
    int track_buffer = 30;          // frames a lost track is retained
    double min_box_area = 10.0;     // px^2, smaller detections are discarded
    bool class_gated = true;

    /// Throws ValidationError when a field is out of range.
    void validate() const;

    friend bool operator==(const TrackerConfig&, const TrackerConfig&) = default;
};

enum class TrackState { Tentative, Active, Lost, Terminated };

struct Track {
    TrackId id;
    ClassLabel label;
    TrackState state = TrackState::Tentative;
    KalmanState kalman;
    BBox last_bbox;
    double last_confidence = 0.0;
    std::int64_t frames_since_update = 0;
    std::int64_t age = 0;
    std::int64_t start_frame = 0;
    std::int64_t last_update_frame = 0;
};

/// One Active, updated track in one frame.
struct TrackedObject {
    std::int64_t frame_index = 0;
    TrackId track_id;
    ClassLabel label;
    BBox bbox;
    double confidence = 0.0;

    friend bool operator==(const TrackedObject&, const TrackedObject&) = default;
};

struct TrackerSnapshot {
    TrackerConfig config;
    std::vector<Track> tracks;
    std::uint64_t next_id = 1;
    std::optional<std::int64_t> last_frame;
};

/// Two-stage association tracker for a single stream.
///
/// Per frame: high-confidence detections are matched against Active and Lost
/// tracks, low-confidence detections against the remaining Active tracks, and
/// leftover high-confidence detections confirm Tentative tracks or spawn new
/// ones. Not thread-safe; one instance per stream.
class ByteTracker {
public:
    explicit ByteTracker(TrackerConfig config = {});
    explicit ByteTracker(TrackerSnapshot snapshot);

    /// Processes one frame. `frame_index` must exceed the previous call's
    /// (OrderingError otherwise). Returns the frame's Active tracks by id.
    std::vector<TrackedObject> step(std::span<const Detection> detections, std::int64_t frame_index);

    /// Ids of tracks that were terminated during the most recent step.
    const std::vector<TrackId>& terminated() const noexcept { return terminated_; }

    /// Live (non-terminated) tracks in creation order.
    const std::vector<Track>& tracks() const noexcept { return tracks_; }

    const TrackerConfig& config() const noexcept { return config_; }
    std::optional<std::int64_t> last_frame() const noexcept { return last_frame_; }

    TrackerSnapshot snapshot() const;

private:
    void update_track(Track& track, const Detection& det, std::int64_t frame_index);

    TrackerConfig config_;
    std::vector<Track> tracks_;
    std::vector<TrackId> terminated_;
    std::uint64_t next_id_ = 1;
    std::optional<std::int64_t> last_frame_;
};

}  // namespace edgeidle::tracker
