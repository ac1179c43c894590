#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "edgeidle/idle/model.hpp"
#include "edgeidle/io/tracks.hpp"

namespace edgeidle::pipeline {

/// Holds emitted rows in arrival order until the window each row belongs to
/// is resolved, either by a verdict or by being discarded. Rows leave in
/// arrival order, so output order never depends on verdict timing.
class Sequencer {
public:
    struct Pending {
        io::TrackRecord row;
        std::uint64_t window_index = 0;
        bool resolved = false;  // row.state and row.p hold the resolution
    };

    void push(const io::TrackRecord& row, std::uint64_t window_index);
    void resolve(TrackId track, std::uint64_t window_index, idle::IdleState state, double p);
    void discard(TrackId track, std::uint64_t window_index);

    /// Appends every resolved row at the head of the queue to `out`.
    void drain(std::vector<io::TrackRecord>& out);

    std::size_t pending() const noexcept { return queue_.size(); }

    /// Queue contents; rows of windows resolved behind an open one carry their resolution.
    std::vector<Pending> snapshot() const;
    static Sequencer restore(const std::vector<Pending>& pending);

private:
    using Key = std::pair<std::uint64_t, std::uint64_t>;  // track id, window index
    struct Window {
        std::size_t rows = 0;
        bool resolved = false;
        io::RowState state = io::RowState::ActiveUnknown;
        std::optional<double> p;
    };

    Window& window(TrackId track, std::uint64_t window_index);

    std::deque<Pending> queue_;
    std::map<Key, Window> windows_;
};

}  // namespace edgeidle::pipeline
