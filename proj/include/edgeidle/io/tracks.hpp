#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edgeidle/core/geometry.hpp"

namespace edgeidle::io {

inline constexpr const char* kTrackSchemaLine = "#schema=edgeidle.tracks;version=1";
inline constexpr const char* kTrackHeaderLine = "frame,track_id,class_id,x,y,w,h,confidence,state,p";

/// Per-row activity label. ActiveUnknown marks rows no window verdict covers.
enum class RowState { ActiveUnknown, Idle, Active };

const char* to_string(RowState s) noexcept;
RowState row_state_from_string(std::string_view s);

struct TrackRecord {
    std::int64_t frame_index = 0;
    TrackId track_id;
    ClassLabel label;
    BBox bbox;
    double confidence = 0.0;
    RowState state = RowState::ActiveUnknown;
    std::optional<double> p;

    friend bool operator==(const TrackRecord&, const TrackRecord&) = default;
};

std::string format_track_record(const TrackRecord& r);
TrackRecord parse_track_record(const std::string& text, std::size_t line);

class TrackReader {
public:
    explicit TrackReader(std::istream& in);

    std::optional<TrackRecord> next();
    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::string text_;
    std::size_t line_ = 0;
    bool header_seen_ = false;
    std::optional<std::int64_t> last_frame_;
};

std::vector<TrackRecord> read_tracks(std::istream& in);
std::vector<TrackRecord> read_track_file(const std::string& path);

class TrackWriter {
public:
    explicit TrackWriter(std::ostream& out);

    void write(const TrackRecord& r);
    void flush() { out_.flush(); }

private:
    std::ostream& out_;
    std::string buf_;
};

void write_track_file(const std::string& path, const std::vector<TrackRecord>& rows);

}  // namespace edgeidle::io
