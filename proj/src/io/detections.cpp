#include "edgeidle/io/detections.hpp"

#include <fstream>

#include <fmt/format.h>

#include "edgeidle/error.hpp"
#include "edgeidle/io/format.hpp"

namespace edgeidle::io {
namespace {

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_detection(const Detection& d) {
    std::string s = fmt::format("{{\"frame\":{},\"cls\":{},\"conf\":", d.frame_index, d.label.id);
    append_fixed6(s, d.confidence);
    s += ",\"x\":";
    append_fixed6(s, d.bbox.x);
    s += ",\"y\":";
    append_fixed6(s, d.bbox.y);
    s += ",\"w\":";
    append_fixed6(s, d.bbox.w);
    s += ",\"h\":";
    append_fixed6(s, d.bbox.h);
    s += '}';
    return s;
}

Detection parse_detection(const std::string& text, std::size_t line) {
    const json j = parse_line(text, line);
    try {
        Detection d;
        d.frame_index = get_integer(j, "frame", "");
        d.label.id = static_cast<int>(get_integer(j, "cls", ""));
        d.confidence = get_number(j, "conf", "");
        d.bbox = {get_number(j, "x", ""), get_number(j, "y", ""), get_number(j, "w", ""), get_number(j, "h", "")};
        if (d.frame_index < 0) {
            throw ValidationError("frame: must be >= 0");
        }
        if (d.label.id < 0) {
            throw ValidationError("cls: must be >= 0");
        }
        if (d.confidence < 0.0 || d.confidence > 1.0) {
            throw ValidationError("conf: must be in [0, 1]");
        }
        require_valid(d.bbox, "bbox");
        return d;
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
    }
}

DetectionReader::DetectionReader(std::istream& in) : in_(in) {}

std::optional<Detection> DetectionReader::next_record() {
    while (std::getline(in_, text_)) {
        ++line_;
        if (is_blank(text_)) {
            continue;
        }
        if (line_ == 1 && text_.find("\"schema\"") != std::string::npos) {
            check_schema(parse_line(text_, line_), kDetectionSchema, kDetectionVersion);
            continue;
        }
        Detection d = parse_detection(text_, line_);
        if (last_frame_ && d.frame_index < *last_frame_) {
            throw OrderingError("line " + std::to_string(line_) + ": frame " + std::to_string(d.frame_index) +
                                " after frame " + std::to_string(*last_frame_));
        }
        last_frame_ = d.frame_index;
        return d;
    }
    if (in_.bad()) {
        throw IoError("read failed at line " + std::to_string(line_));
    }
    return std::nullopt;
}

std::optional<sim::DetectionFrame> DetectionReader::next_frame() {
    if (!pending_) {
        pending_ = next_record();
        if (!pending_) {
            return std::nullopt;
        }
    }
    sim::DetectionFrame frame;
    frame.frame_index = pending_->frame_index;
    frame.detections.push_back(*pending_);
    pending_.reset();
    while (auto d = next_record()) {
        if (d->frame_index != frame.frame_index) {
            pending_ = d;
            break;
        }
        frame.detections.push_back(*d);
    }
    peak_buffered_ = std::max(peak_buffered_, frame.detections.size());
    return frame;
}

std::vector<sim::DetectionFrame> read_detection_frames(std::istream& in) {
    DetectionReader reader(in);
    std::vector<sim::DetectionFrame> frames;
    while (auto f = reader.next_frame()) {
        frames.push_back(std::move(*f));
    }
    return frames;
}

std::vector<sim::DetectionFrame> read_detection_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_detection_frames(in);
}

DetectionWriter::DetectionWriter(std::ostream& out, bool header) : out_(out) {
    if (header) {
        out_ << schema_header(kDetectionSchema, kDetectionVersion).dump() << '\n';
    }
}

void DetectionWriter::write(const Detection& d) {
    buf_ = format_detection(d);
    buf_ += '\n';
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out_) {
        throw IoError("write failed");
    }
}

void DetectionWriter::write_frame(const sim::DetectionFrame& frame) {
    for (const Detection& d : frame.detections) {
        write(d);
    }
}

void write_detection_file(const std::string& path, const std::vector<sim::DetectionFrame>& frames) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    DetectionWriter writer(out);
    for (const auto& f : frames) {
        writer.write_frame(f);
    }
}

}  // namespace edgeidle::io
