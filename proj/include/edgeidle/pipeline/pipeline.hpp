#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/io/tracks.hpp"
#include "edgeidle/pipeline/sequencer.hpp"
#include "edgeidle/sim/generator.hpp"
#include "edgeidle/tracker/byte_tracker.hpp"

namespace edgeidle::pipeline {

/// Live-state counters; none of them grows with stream length.
struct StateSize {
    std::size_t live_tracks = 0;
    std::size_t window_buffers = 0;
    std::size_t buffered_observations = 0;
    std::size_t pending_rows = 0;
};

struct StageTimes {
    double track_ms = 0.0;
    double idle_ms = 0.0;
};

/// Complete resumable state of one stream.
struct Checkpoint {
    tracker::TrackerSnapshot tracker;
    idle::IdleConfig idle;
    std::vector<idle::WindowBuffer> buffers;
    std::vector<Sequencer::Pending> pending;
};

/// Tracker, idle engine and row sequencer for one stream.
///
/// Frames absent from the input are processed as empty frames, up to the
/// point where every live track has expired, so a sparse stream and its
/// densely filled form produce the same rows.
class Pipeline {
public:
    Pipeline(tracker::TrackerConfig tracker_config, idle::IdleConfig idle_config);
    explicit Pipeline(Checkpoint checkpoint);

    /// Appends rows whose window has been resolved to `out`, in emission order.
    void process(const sim::DetectionFrame& frame, std::vector<io::TrackRecord>& out);

    /// Discards every partial window and flushes the remaining rows.
    void finish(std::vector<io::TrackRecord>& out);

    /// Verdicts produced by the most recent process() call.
    const std::vector<idle::IdleVerdict>& verdicts() const noexcept { return verdicts_; }

    Checkpoint checkpoint() const;
    StateSize state_size() const;

    void set_timing(bool enabled) noexcept { timing_ = enabled; }
    const StageTimes& last_times() const noexcept { return times_; }

    const tracker::ByteTracker& tracker() const noexcept { return tracker_; }
    const idle::IdleEngine& engine() const noexcept { return engine_; }

private:
    void step(std::span<const Detection> detections, std::int64_t frame_index);

    tracker::ByteTracker tracker_;
    idle::IdleEngine engine_;
    Sequencer sequencer_;
    std::vector<idle::IdleVerdict> verdicts_;
    bool timing_ = false;
    StageTimes times_;
};

/// Empty frames to step before `frame_index`: the missing indices right
/// after the tracker's last frame, capped at track_buffer + 1 since past that
/// every track has expired and the rest of the gap cannot change anything.
std::pair<std::int64_t, std::int64_t> gap_fill_range(const tracker::ByteTracker& tracker, std::int64_t frame_index);

/// Runs the whole stream through a fresh Pipeline.
std::vector<io::TrackRecord> run_pipeline(const std::vector<sim::DetectionFrame>& frames,
                                          const tracker::TrackerConfig& tracker_config,
                                          const idle::IdleConfig& idle_config);

/// Tracker output rows (state ActiveUnknown) for a whole stream.
std::vector<io::TrackRecord> run_tracker(const std::vector<sim::DetectionFrame>& frames,
                                         const tracker::TrackerConfig& tracker_config);

/// Idle stage alone, fed with tracker rows. A track is treated as terminated
/// once `expiry_frames` frames pass without a row for it, which is exactly
/// when the tracker would have dropped it (track_buffer + 1).
class IdleStage {
public:
    IdleStage(idle::IdleConfig config, std::int64_t expiry_frames);

    void push(const io::TrackRecord& row, std::vector<io::TrackRecord>& out);
    void finish(std::vector<io::TrackRecord>& out);

    std::size_t pending_rows() const noexcept { return sequencer_.pending(); }

private:
    void expire(std::int64_t frame_index);

    idle::IdleEngine engine_;
    Sequencer sequencer_;
    std::int64_t expiry_;
    std::unordered_map<TrackId, std::int64_t> last_seen_;
    std::optional<std::int64_t> current_frame_;
};

/// Windows recovered from rows of a track file: each track's rows are cut
/// into consecutive chunks of `capacity`; chunks whose rows carry a verdict
/// become IdleVerdicts. Inverse of the pipeline's windowing.
std::vector<idle::IdleVerdict> reconstruct_verdicts(std::span<const io::TrackRecord> rows, std::size_t capacity);

std::vector<tracker::TrackedObject> to_tracked(std::span<const io::TrackRecord> rows);

}  // namespace edgeidle::pipeline
