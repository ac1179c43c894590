#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "edgeidle/core/geometry.hpp"
#include "edgeidle/sim/generator.hpp"

namespace edgeidle::io {

inline constexpr const char* kDetectionSchema = "edgeidle.detections";
inline constexpr int kDetectionVersion = 1;

/// One JSON object per line: {"frame","cls","conf","x","y","w","h"}.
std::string format_detection(const Detection& d);
Detection parse_detection(const std::string& text, std::size_t line);

/// Pulls one frame at a time from a detection stream. Frames with no
/// detections are not materialized; callers see only the frames present.
/// Memory is bounded by the largest single frame.
class DetectionReader {
public:
    explicit DetectionReader(std::istream& in);

    std::optional<sim::DetectionFrame> next_frame();

    std::size_t line() const noexcept { return line_; }
    std::size_t peak_buffered() const noexcept { return peak_buffered_; }

private:
    std::optional<Detection> next_record();

    std::istream& in_;
    std::string text_;
    std::size_t line_ = 0;
    std::optional<Detection> pending_;
    std::optional<std::int64_t> last_frame_;
    std::size_t peak_buffered_ = 0;
};

std::vector<sim::DetectionFrame> read_detection_frames(std::istream& in);
std::vector<sim::DetectionFrame> read_detection_file(const std::string& path);

class DetectionWriter {
public:
    explicit DetectionWriter(std::ostream& out, bool header = true);

    void write(const Detection& d);
    void write_frame(const sim::DetectionFrame& frame);

private:
    std::ostream& out_;
    std::string buf_;
};

void write_detection_file(const std::string& path, const std::vector<sim::DetectionFrame>& frames);

}  // namespace edgeidle::io
