#include "edgeidle/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgeidle/error.hpp"

namespace edgeidle::sim {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ValidationError(path + ": " + msg); }

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

std::int64_t go_length(const StopGo& m) {
    const auto go = static_cast<std::int64_t>(std::llround(static_cast<double>(m.period) * m.duty));
    return std::clamp<std::int64_t>(go, 0, m.period);
}

}  // namespace

double stop_go_step(const StopGo& mode, std::int64_t phase) noexcept {
    const std::int64_t go = go_length(mode);
    const std::int64_t stop = mode.period - go;
    if (go == 0 || phase < stop) {
        return 0.0;
    }
    const double s = std::sin(std::numbers::pi * (static_cast<double>(phase - stop) + 0.5) / static_cast<double>(go));
    return 2.0 * s * s;
}

void ScenarioSpec::validate() const {
    if (frame_count < 0) fail("frame_count", "must be >= 0");
    if (!(frame_width > 0.0) || !(frame_height > 0.0) || !std::isfinite(frame_width) || !std::isfinite(frame_height)) {
        fail("frame_size", "width and height must be positive");
    }
    if (!(fps > 0.0) || !std::isfinite(fps)) fail("fps", "must be positive");
    if (!probability(noise.miss_prob)) fail("noise.miss_prob", "must be in [0, 1]");
    if (!(noise.bbox_jitter_std >= 0.0)) fail("noise.bbox_jitter_std", "must be >= 0");
    if (!probability(noise.confidence_mean)) fail("noise.confidence_mean", "must be in [0, 1]");
    if (!(noise.confidence_std >= 0.0)) fail("noise.confidence_std", "must be >= 0");
    if (!(noise.false_positive_rate >= 0.0) || !std::isfinite(noise.false_positive_rate)) {
        fail("noise.false_positive_rate", "must be >= 0");
    }

    for (std::size_t i = 0; i < machines.size(); ++i) {
        const std::string base = "machines[" + std::to_string(i) + "]";
        const MachineSpec& m = machines[i];
        if (m.label.id < 0) fail(base + ".class", "must be >= 0");
        if (!is_valid(m.initial)) fail(base + ".initial", "box must be finite with w, h > 0");
        if (m.initial.x < 0.0 || m.initial.y < 0.0 || m.initial.x + m.initial.w > frame_width ||
            m.initial.y + m.initial.h > frame_height) {
            fail(base + ".initial", "box must lie inside the frame");
        }
        for (std::size_t s = 0; s < m.script.segments.size(); ++s) {
            const std::string seg = base + ".script[" + std::to_string(s) + "]";
            const MotionSegment& ms = m.script.segments[s];
            if (ms.duration_frames < 1) fail(seg + ".duration", "must be >= 1");
            std::visit(
                [&](const auto& mode) {
                    using T = std::decay_t<decltype(mode)>;
                    if constexpr (std::is_same_v<T, Stationary>) {
                        if (!(mode.jitter_std >= 0.0) || !std::isfinite(mode.jitter_std)) {
                            fail(seg + ".jitter_std", "must be >= 0");
                        }
                    } else if constexpr (std::is_same_v<T, Linear>) {
                        if (!std::isfinite(mode.vx) || !std::isfinite(mode.vy)) fail(seg + ".velocity", "must be finite");
                    } else {
                        if (mode.period < 1) fail(seg + ".period", "must be >= 1");
                        if (!probability(mode.duty)) fail(seg + ".duty", "must be in [0, 1]");
                        if (!std::isfinite(mode.vx) || !std::isfinite(mode.vy)) fail(seg + ".velocity", "must be finite");
                    }
                },
                ms.mode);
        }
        for (std::size_t k = 0; k < m.occlusions.size(); ++k) {
            const FrameInterval& o = m.occlusions[k];
            if (o.begin < 0 || o.end < o.begin) {
                fail(base + ".occlusions[" + std::to_string(k) + "]", "need 0 <= begin <= end");
            }
        }
    }
}

}  // namespace edgeidle::sim
