#include "edgeidle/io/tracks.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "edgeidle/error.hpp"
#include "edgeidle/io/format.hpp"

namespace edgeidle::io {
namespace {

constexpr std::size_t kColumns = 10;

template <typename T>
T parse_field(std::string_view field, std::string_view name, std::size_t line) {
    T value{};
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw ParseError(line, std::string(name) + ": cannot parse '" + std::string(field) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) {
            throw ParseError(line, std::string(name) + ": must be finite");
        }
    }
    return value;
}

}  // namespace

const char* to_string(RowState s) noexcept {
    switch (s) {
        case RowState::Idle: return "IDLE";
        case RowState::Active: return "ACTIVE";
        case RowState::ActiveUnknown: break;
    }
    return "ACTIVE_UNKNOWN";
}

RowState row_state_from_string(std::string_view s) {
    if (s == "IDLE") return RowState::Idle;
    if (s == "ACTIVE") return RowState::Active;
    if (s == "ACTIVE_UNKNOWN") return RowState::ActiveUnknown;
    throw ValidationError("unknown state '" + std::string(s) + "'");
}

std::string format_track_record(const TrackRecord& r) {
    std::string s = fmt::format("{},{},{},", r.frame_index, r.track_id.value, r.label.id);
    for (double v : {r.bbox.x, r.bbox.y, r.bbox.w, r.bbox.h, r.confidence}) {
        append_fixed6(s, v);
        s += ',';
    }
    s += to_string(r.state);
    s += ',';
    if (r.p) {
        append_fixed6(s, *r.p);
    }
    return s;
}

TrackRecord parse_track_record(const std::string& text, std::size_t line) {
    std::array<std::string_view, kColumns> f;
    std::string_view rest(text);
    if (!rest.empty() && rest.back() == '\r') {
        rest.remove_suffix(1);
    }
    std::size_t n = 0;
    while (true) {
        const std::size_t comma = rest.find(',');
        if (n == kColumns) {
            throw ParseError(line, "expected " + std::to_string(kColumns) + " columns");
        }
        f[n++] = rest.substr(0, comma);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (n != kColumns) {
        throw ParseError(line, "expected " + std::to_string(kColumns) + " columns, found " + std::to_string(n));
    }
    TrackRecord r;
    r.frame_index = parse_field<std::int64_t>(f[0], "frame", line);
    r.track_id.value = parse_field<std::uint64_t>(f[1], "track_id", line);
    r.label.id = parse_field<int>(f[2], "class_id", line);
    r.bbox = {parse_field<double>(f[3], "x", line), parse_field<double>(f[4], "y", line),
              parse_field<double>(f[5], "w", line), parse_field<double>(f[6], "h", line)};
    r.confidence = parse_field<double>(f[7], "confidence", line);
    try {
        r.state = row_state_from_string(f[8]);
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
    if (!f[9].empty()) {
        r.p = parse_field<double>(f[9], "p", line);
    }
    if (r.frame_index < 0 || r.track_id.value == 0 || r.label.id < 0) {
        throw ParseError(line, "frame, track_id and class_id must be nonnegative (track_id >= 1)");
    }
    if (!is_valid(r.bbox)) {
        throw ParseError(line, "bbox must have positive width and height");
    }
    if (r.confidence < 0.0 || r.confidence > 1.0 || (r.p && (*r.p < 0.0 || *r.p > 1.0))) {
        throw ParseError(line, "confidence and p must lie in [0, 1]");
    }
    if (r.p.has_value() == (r.state == RowState::ActiveUnknown)) {
        throw ParseError(line, "p must be present exactly when the state is IDLE or ACTIVE");
    }
    return r;
}

TrackReader::TrackReader(std::istream& in) : in_(in) {}

std::optional<TrackRecord> TrackReader::next() {
    while (std::getline(in_, text_)) {
        ++line_;
        if (text_.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (!text_.empty() && text_.back() == '\r') {
            text_.pop_back();
        }
        if (text_.starts_with("#schema=")) {
            if (line_ != 1) {
                throw ParseError(line_, "schema line must come first");
            }
            if (!text_.starts_with("#schema=edgeidle.tracks;")) {
                throw ValidationError("not an edgeidle.tracks file");
            }
            if (text_ != kTrackSchemaLine) {
                throw SchemaVersionError("edgeidle.tracks: unsupported " + text_.substr(text_.find(';') + 1));
            }
            continue;
        }
        if (!header_seen_) {
            if (text_ != kTrackHeaderLine) {
                throw ParseError(line_, "expected header '" + std::string(kTrackHeaderLine) + "'");
            }
            header_seen_ = true;
            continue;
        }
        TrackRecord r = parse_track_record(text_, line_);
        if (last_frame_ && r.frame_index < *last_frame_) {
            throw OrderingError("line " + std::to_string(line_) + ": frame " + std::to_string(r.frame_index) +
                                " after frame " + std::to_string(*last_frame_));
        }
        last_frame_ = r.frame_index;
        return r;
    }
    if (in_.bad()) {
        throw IoError("read failed at line " + std::to_string(line_));
    }
    return std::nullopt;
}

std::vector<TrackRecord> read_tracks(std::istream& in) {
    TrackReader reader(in);
    std::vector<TrackRecord> rows;
    while (auto r = reader.next()) {
        rows.push_back(*r);
    }
    return rows;
}

std::vector<TrackRecord> read_track_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_tracks(in);
}

TrackWriter::TrackWriter(std::ostream& out) : out_(out) {
    out_ << kTrackSchemaLine << '\n' << kTrackHeaderLine << '\n';
}

void TrackWriter::write(const TrackRecord& r) {
    buf_ = format_track_record(r);
    buf_ += '\n';
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out_) {
        throw IoError("write failed");
    }
}

void write_track_file(const std::string& path, const std::vector<TrackRecord>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    TrackWriter writer(out);
    for (const auto& r : rows) {
        writer.write(r);
    }
}

}  // namespace edgeidle::io
