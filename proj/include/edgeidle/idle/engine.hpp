#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "edgeidle/core/geometry.hpp"
#include "edgeidle/idle/model.hpp"

namespace edgeidle::idle {

struct IdleConfig {
    std::size_t capacity = 15;  // observations per window
    double fps = 10.0;          // nominal stream rate, used for window duration
    MadVariant mad_variant = MadVariant::AsPrinted;
    IdleModel model = reference_model();

    void validate() const;
    double window_seconds() const noexcept { return static_cast<double>(capacity) / fps; }
};

struct IdleVerdict {
    TrackId track_id;
    std::int64_t first_frame = 0;
    std::int64_t last_frame = 0;
    std::uint64_t window_index = 0;  // 0-based per track
    double p = 0.0;
    IdleState state = IdleState::Idle;
    WindowFeatures features;
};

/// Tumbling buffer of one track's (area, centroid) observations.
struct WindowBuffer {
    TrackId track_id;
    std::vector<double> areas;
    std::vector<Point> centroids;
    std::int64_t first_frame = 0;
    std::int64_t last_frame = -1;     // most recent observation, survives clearing
    std::uint64_t window_index = 0;  // index of the window being filled
};

/// Per-track window buffers for one stream. Not thread-safe.
class IdleEngine {
public:
    explicit IdleEngine(IdleConfig config = {});
    IdleEngine(IdleConfig config, std::vector<WindowBuffer> buffers);

    /// Appends an observation; returns a verdict when the track's buffer fills.
    /// Throws DuplicateObservationError for a repeated (track, frame) and
    /// OrderingError for a frame older than the track's last one.
    std::optional<IdleVerdict> push_observation(TrackId track, const BBox& bbox, std::int64_t frame_index);

    /// Drops a track's buffer. Returns the index of the discarded partial
    /// window, or nothing when the buffer was empty or unknown.
    std::optional<std::uint64_t> discard(TrackId track);

    /// Index of the window the next observation of `track` will join.
    std::uint64_t open_window(TrackId track) const;

    const IdleConfig& config() const noexcept { return config_; }
    std::size_t live_buffers() const noexcept { return buffers_.size(); }
    std::size_t buffered_observations() const noexcept;

    /// Buffers sorted by track id.
    std::vector<WindowBuffer> snapshot() const;

private:
    IdleConfig config_;
    std::unordered_map<TrackId, WindowBuffer> buffers_;
};

}  // namespace edgeidle::idle
