#include "edgeidle/pipeline/sequencer.hpp"

#include "edgeidle/error.hpp"

namespace edgeidle::pipeline {

void Sequencer::push(const io::TrackRecord& row, std::uint64_t window_index) {
    Window& w = windows_[{row.track_id.value, window_index}];
    if (w.resolved) {
        throw InvariantError("row pushed into an already resolved window");
    }
    ++w.rows;
    queue_.push_back({row, window_index});
}

Sequencer::Window& Sequencer::window(TrackId track, std::uint64_t window_index) {
    auto it = windows_.find({track.value, window_index});
    if (it == windows_.end()) {
        throw InvariantError("resolution for unknown window " + std::to_string(window_index) + " of track " +
                             std::to_string(track.value));
    }
    return it->second;
}

void Sequencer::resolve(TrackId track, std::uint64_t window_index, idle::IdleState state, double p) {
    Window& w = window(track, window_index);
    w.resolved = true;
    w.state = state == idle::IdleState::Idle ? io::RowState::Idle : io::RowState::Active;
    w.p = p;
}

void Sequencer::discard(TrackId track, std::uint64_t window_index) {
    Window& w = window(track, window_index);
    w.resolved = true;
    w.state = io::RowState::ActiveUnknown;
    w.p.reset();
}

void Sequencer::drain(std::vector<io::TrackRecord>& out) {
    while (!queue_.empty()) {
        Pending& head = queue_.front();
        auto it = windows_.find({head.row.track_id.value, head.window_index});
        if (!it->second.resolved) {
            break;
        }
        head.row.state = it->second.state;
        head.row.p = it->second.p;
        out.push_back(head.row);
        if (--it->second.rows == 0) {
            windows_.erase(it);
        }
        queue_.pop_front();
    }
}

std::vector<Sequencer::Pending> Sequencer::snapshot() const {
    std::vector<Pending> out;
    out.reserve(queue_.size());
    for (const Pending& p : queue_) {
        Pending copy = p;
        const Window& w = windows_.at({p.row.track_id.value, p.window_index});
        copy.resolved = w.resolved;
        copy.row.state = w.state;
        copy.row.p = w.p;
        out.push_back(std::move(copy));
    }
    return out;
}

Sequencer Sequencer::restore(const std::vector<Pending>& pending) {
    Sequencer s;
    for (const auto& p : pending) {
        io::TrackRecord row = p.row;
        row.state = io::RowState::ActiveUnknown;
        row.p.reset();
        s.push(row, p.window_index);
    }
    for (const auto& p : pending) {
        if (!p.resolved) continue;
        Window& w = s.window(p.row.track_id, p.window_index);
        w.resolved = true;
        w.state = p.row.state;
        w.p = p.row.p;
    }
    return s;
}

}  // namespace edgeidle::pipeline
