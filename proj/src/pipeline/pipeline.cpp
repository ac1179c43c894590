#include "edgeidle/pipeline/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "edgeidle/error.hpp"

namespace edgeidle::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

io::TrackRecord to_record(const tracker::TrackedObject& o) {
    io::TrackRecord r;
    r.frame_index = o.frame_index;
    r.track_id = o.track_id;
    r.label = o.label;
    r.bbox = o.bbox;
    r.confidence = o.confidence;
    return r;
}

}  // namespace

Pipeline::Pipeline(tracker::TrackerConfig tracker_config, idle::IdleConfig idle_config)
    : tracker_(tracker_config), engine_(std::move(idle_config)) {}

Pipeline::Pipeline(Checkpoint checkpoint)
    : tracker_(std::move(checkpoint.tracker)),
      engine_(std::move(checkpoint.idle), std::move(checkpoint.buffers)),
      sequencer_(Sequencer::restore(checkpoint.pending)) {}

void Pipeline::process(const sim::DetectionFrame& frame, std::vector<io::TrackRecord>& out) {
    verdicts_.clear();
    times_ = {};
    const auto [fill_begin, fill_end] = gap_fill_range(tracker_, frame.frame_index);
    for (std::int64_t f = fill_begin; f < fill_end; ++f) {
        step({}, f);
    }
    step(frame.detections, frame.frame_index);
    sequencer_.drain(out);
}

void Pipeline::step(std::span<const Detection> detections, std::int64_t frame_index) {
    const auto t0 = timing_ ? Clock::now() : Clock::time_point{};
    const std::vector<tracker::TrackedObject> objects = tracker_.step(detections, frame_index);
    const auto t1 = timing_ ? Clock::now() : Clock::time_point{};
    if (timing_) {
        times_.track_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    for (TrackId id : tracker_.terminated()) {
        if (auto w = engine_.discard(id)) {
            sequencer_.discard(id, *w);
        }
    }
    for (const auto& o : objects) {
        sequencer_.push(to_record(o), engine_.open_window(o.track_id));
        if (auto v = engine_.push_observation(o.track_id, o.bbox, frame_index)) {
            sequencer_.resolve(v->track_id, v->window_index, v->state, v->p);
            verdicts_.push_back(*v);
        }
    }
    if (timing_) {
        times_.idle_ms += elapsed_ms(t1);
    }
}

void Pipeline::finish(std::vector<io::TrackRecord>& out) {
    for (const auto& b : engine_.snapshot()) {
        if (auto w = engine_.discard(b.track_id)) {
            sequencer_.discard(b.track_id, *w);
        }
    }
    sequencer_.drain(out);
    if (sequencer_.pending() != 0) {
        throw InvariantError("rows left unresolved at end of stream");
    }
}

Checkpoint Pipeline::checkpoint() const {
    return {tracker_.snapshot(), engine_.config(), engine_.snapshot(), sequencer_.snapshot()};
}

StateSize Pipeline::state_size() const {
    return {tracker_.tracks().size(), engine_.live_buffers(), engine_.buffered_observations(),
            sequencer_.pending()};
}

std::pair<std::int64_t, std::int64_t> gap_fill_range(const tracker::ByteTracker& tracker, std::int64_t frame_index) {
    const auto last = tracker.last_frame();
    if (!last || frame_index <= *last + 1) {
        return {0, 0};
    }
    const std::int64_t fills = std::min<std::int64_t>(frame_index - *last - 1, tracker.config().track_buffer + 1);
    return {*last + 1, *last + 1 + fills};
}

std::vector<io::TrackRecord> run_pipeline(const std::vector<sim::DetectionFrame>& frames,
                                          const tracker::TrackerConfig& tracker_config,
                                          const idle::IdleConfig& idle_config) {
    Pipeline p(tracker_config, idle_config);
    std::vector<io::TrackRecord> out;
    for (const auto& f : frames) {
        p.process(f, out);
    }
    p.finish(out);
    return out;
}

std::vector<io::TrackRecord> run_tracker(const std::vector<sim::DetectionFrame>& frames,
                                         const tracker::TrackerConfig& tracker_config) {
    tracker::ByteTracker t(tracker_config);
    std::vector<io::TrackRecord> out;
    for (const auto& f : frames) {
        const auto [fill_begin, fill_end] = gap_fill_range(t, f.frame_index);
        for (std::int64_t k = fill_begin; k < fill_end; ++k) {
            for (const auto& o : t.step({}, k)) {
                out.push_back(to_record(o));
            }
        }
        for (const auto& o : t.step(f.detections, f.frame_index)) {
            out.push_back(to_record(o));
        }
    }
    return out;
}

IdleStage::IdleStage(idle::IdleConfig config, std::int64_t expiry_frames)
    : engine_(std::move(config)), expiry_(expiry_frames) {
    if (expiry_ < 1) {
        throw ValidationError("idle stage expiry must be >= 1 frame");
    }
}

void IdleStage::expire(std::int64_t frame_index) {
    std::vector<TrackId> dead;
    for (const auto& [id, last] : last_seen_) {
        if (frame_index - last > expiry_) {
            dead.push_back(id);
        }
    }
    std::sort(dead.begin(), dead.end());
    for (TrackId id : dead) {
        if (auto w = engine_.discard(id)) {
            sequencer_.discard(id, *w);
        }
        last_seen_.erase(id);
    }
}

void IdleStage::push(const io::TrackRecord& row, std::vector<io::TrackRecord>& out) {
    if (current_frame_ && row.frame_index < *current_frame_) {
        throw OrderingError("track rows out of frame order at frame " + std::to_string(row.frame_index));
    }
    if (!current_frame_ || row.frame_index > *current_frame_) {
        current_frame_ = row.frame_index;
        expire(row.frame_index);
    }
    io::TrackRecord clean = row;
    clean.state = io::RowState::ActiveUnknown;
    clean.p.reset();
    sequencer_.push(clean, engine_.open_window(row.track_id));
    if (auto v = engine_.push_observation(row.track_id, row.bbox, row.frame_index)) {
        sequencer_.resolve(v->track_id, v->window_index, v->state, v->p);
    }
    last_seen_[row.track_id] = row.frame_index;
    sequencer_.drain(out);
}

void IdleStage::finish(std::vector<io::TrackRecord>& out) {
    for (const auto& b : engine_.snapshot()) {
        if (auto w = engine_.discard(b.track_id)) {
            sequencer_.discard(b.track_id, *w);
        }
    }
    last_seen_.clear();
    sequencer_.drain(out);
    if (sequencer_.pending() != 0) {
        throw InvariantError("rows left unresolved at end of stream");
    }
}

std::vector<idle::IdleVerdict> reconstruct_verdicts(std::span<const io::TrackRecord> rows, std::size_t capacity) {
    if (capacity < 2) {
        throw ValidationError("capacity must be >= 2");
    }
    std::map<TrackId, std::vector<const io::TrackRecord*>> by_track;
    for (const auto& r : rows) {
        by_track[r.track_id].push_back(&r);
    }
    std::vector<idle::IdleVerdict> out;
    for (const auto& [id, track_rows] : by_track) {
        std::uint64_t window = 0;
        for (std::size_t start = 0; start < track_rows.size(); start += capacity, ++window) {
            const std::size_t end = std::min(start + capacity, track_rows.size());
            const io::TrackRecord& first = *track_rows[start];
            if (first.state == io::RowState::ActiveUnknown) {
                continue;
            }
            if (end - start != capacity) {
                throw ValidationError("track " + std::to_string(id.value) + ": partial window carries a verdict");
            }
            idle::IdleVerdict v;
            v.track_id = id;
            v.first_frame = first.frame_index;
            v.last_frame = track_rows[end - 1]->frame_index;
            v.window_index = window;
            v.p = first.p.value_or(0.0);
            v.state = first.state == io::RowState::Idle ? idle::IdleState::Idle : idle::IdleState::Active;
            v.features.n = capacity;
            for (std::size_t i = start; i < end; ++i) {
                if (track_rows[i]->state != first.state || track_rows[i]->p != first.p) {
                    throw ValidationError("track " + std::to_string(id.value) + ": window " +
                                          std::to_string(window) + " rows disagree on the verdict");
                }
            }
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.last_frame, a.track_id) < std::tie(b.last_frame, b.track_id);
    });
    return out;
}

std::vector<tracker::TrackedObject> to_tracked(std::span<const io::TrackRecord> rows) {
    std::vector<tracker::TrackedObject> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back({r.frame_index, r.track_id, r.label, r.bbox, r.confidence});
    }
    return out;
}

}  // namespace edgeidle::pipeline
