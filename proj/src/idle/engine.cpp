#include "edgeidle/idle/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeidle/error.hpp"

namespace edgeidle::idle {

void IdleConfig::validate() const {
    if (capacity < 2) {
        throw ValidationError("idle config: capacity must be >= 2");
    }
    if (!(fps > 0.0) || !std::isfinite(fps)) {
        throw ValidationError("idle config: fps must be positive");
    }
    model.validate();
}

IdleEngine::IdleEngine(IdleConfig config) : config_(config) { config_.validate(); }

IdleEngine::IdleEngine(IdleConfig config, std::vector<WindowBuffer> buffers) : IdleEngine(config) {
    for (WindowBuffer& b : buffers) {
        if (b.areas.size() != b.centroids.size() || b.areas.size() >= config_.capacity) {
            throw ValidationError("idle snapshot: buffer for track " + std::to_string(b.track_id.value) +
                                  " is inconsistent with capacity");
        }
        const TrackId id = b.track_id;
        buffers_.emplace(id, std::move(b));
    }
}

std::optional<IdleVerdict> IdleEngine::push_observation(TrackId track, const BBox& bbox, std::int64_t frame_index) {
    require_valid(bbox, "idle observation");
    auto [it, inserted] = buffers_.try_emplace(track);
    WindowBuffer& buf = it->second;
    if (inserted) {
        buf.track_id = track;
        buf.areas.reserve(config_.capacity);
        buf.centroids.reserve(config_.capacity);
    } else if (frame_index == buf.last_frame) {
        throw DuplicateObservationError("track " + std::to_string(track.value) + " already observed in frame " +
                                        std::to_string(frame_index));
    } else if (frame_index < buf.last_frame) {
        throw OrderingError("track " + std::to_string(track.value) + ": frame " + std::to_string(frame_index) +
                            " precedes " + std::to_string(buf.last_frame));
    }

    if (buf.areas.empty()) {
        buf.first_frame = frame_index;
    }
    buf.areas.push_back(bbox_area(bbox));
    buf.centroids.push_back(bbox_centroid(bbox));
    buf.last_frame = frame_index;
    if (buf.areas.size() < config_.capacity) {
        return std::nullopt;
    }

    IdleVerdict v;
    v.track_id = track;
    v.first_frame = buf.first_frame;
    v.last_frame = frame_index;
    v.window_index = buf.window_index;
    v.features = window_features(buf.areas, buf.centroids, config_.mad_variant);
    const Classification c = classify_window(v.features, config_.model);
    v.p = c.p;
    v.state = c.state;

    buf.areas.clear();
    buf.centroids.clear();
    ++buf.window_index;
    return v;
}

std::optional<std::uint64_t> IdleEngine::discard(TrackId track) {
    auto it = buffers_.find(track);
    if (it == buffers_.end()) {
        return std::nullopt;
    }
    std::optional<std::uint64_t> partial;
    if (!it->second.areas.empty()) {
        partial = it->second.window_index;
    }
    buffers_.erase(it);
    return partial;
}

std::uint64_t IdleEngine::open_window(TrackId track) const {
    auto it = buffers_.find(track);
    return it == buffers_.end() ? 0 : it->second.window_index;
}

std::size_t IdleEngine::buffered_observations() const noexcept {
    std::size_t n = 0;
    for (const auto& [id, b] : buffers_) {
        n += b.areas.size();
    }
    return n;
}

std::vector<WindowBuffer> IdleEngine::snapshot() const {
    std::vector<WindowBuffer> out;
    out.reserve(buffers_.size());
    for (const auto& [id, b] : buffers_) {
        out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [](const WindowBuffer& a, const WindowBuffer& b) {
        return a.track_id < b.track_id;
    });
    return out;
}

}  // namespace edgeidle::idle
