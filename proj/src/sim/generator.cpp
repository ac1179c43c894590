#include "edgeidle/sim/generator.hpp"

#include <algorithm>
#include <cmath>

#include "edgeidle/sim/random.hpp"

namespace edgeidle::sim {
namespace {

constexpr double kMinSide = 1.0;
constexpr std::uint64_t kClutterStream = 0;

std::uint64_t motion_stream(std::size_t machine) { return 2 * machine + 2; }
std::uint64_t noise_stream(std::size_t machine) { return 2 * machine + 1; }

BBox with_min_side(BBox b) {
    b.w = std::max(b.w, kMinSide);
    b.h = std::max(b.h, kMinSide);
    return b;
}

double sample_confidence(Rng& rng, const NoiseSpec& noise) {
    return std::clamp(rng.normal(noise.confidence_mean, noise.confidence_std), 0.0, 1.0);
}

}  // namespace

std::vector<BBox> scripted_boxes(const MachineSpec& machine, std::int64_t frame_count, std::uint64_t motion_seed) {
    std::vector<BBox> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(frame_count, 0)));
    Rng rng(motion_seed);
    BBox anchor = machine.initial;

    auto emit = [&](const BBox& b) { out.push_back(b); };
    for (const MotionSegment& seg : machine.script.segments) {
        if (static_cast<std::int64_t>(out.size()) >= frame_count) {
            break;
        }
        std::visit(
            [&](const auto& mode) {
                using T = std::decay_t<decltype(mode)>;
                if constexpr (std::is_same_v<T, Stationary>) {
                    for (std::int64_t t = 0; t < seg.duration_frames && static_cast<std::int64_t>(out.size()) < frame_count; ++t) {
                        emit(with_min_side({anchor.x + mode.jitter_std * rng.normal(0.0, 1.0),
                                            anchor.y + mode.jitter_std * rng.normal(0.0, 1.0),
                                            anchor.w + mode.jitter_std * rng.normal(0.0, 1.0),
                                            anchor.h + mode.jitter_std * rng.normal(0.0, 1.0)}));
                    }
                } else if constexpr (std::is_same_v<T, Linear>) {
                    for (std::int64_t t = 0; t < seg.duration_frames && static_cast<std::int64_t>(out.size()) < frame_count; ++t) {
                        const double k = static_cast<double>(t);
                        emit(translated(anchor, mode.vx * k, mode.vy * k));
                    }
                    const double d = static_cast<double>(seg.duration_frames);
                    anchor = translated(anchor, mode.vx * d, mode.vy * d);
                } else {
                    double travelled = 0.0;
                    for (std::int64_t t = 0; t < seg.duration_frames; ++t) {
                        if (static_cast<std::int64_t>(out.size()) < frame_count) {
                            emit(translated(anchor, mode.vx * travelled, mode.vy * travelled));
                        }
                        travelled += stop_go_step(mode, t % mode.period);
                    }
                    anchor = translated(anchor, mode.vx * travelled, mode.vy * travelled);
                }
            },
            seg.mode);
    }
    while (static_cast<std::int64_t>(out.size()) < frame_count) {
        emit(anchor);
    }
    return out;
}

SimulationResult generate(const ScenarioSpec& spec) {
    spec.validate();
    SimulationResult result;
    const auto frames = static_cast<std::size_t>(spec.frame_count);
    result.truth.fps = spec.fps;
    result.truth.entity_count = spec.machines.size();
    result.truth.frames.resize(frames);
    result.frames.resize(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        result.truth.frames[f].frame_index = static_cast<std::int64_t>(f);
        result.frames[f].frame_index = static_cast<std::int64_t>(f);
    }

    const NoiseSpec& noise = spec.noise;
    for (std::size_t m = 0; m < spec.machines.size(); ++m) {
        const MachineSpec& machine = spec.machines[m];
        const std::vector<BBox> boxes =
            scripted_boxes(machine, spec.frame_count, derive_seed(spec.seed, motion_stream(m)));
        Rng rng(derive_seed(spec.seed, noise_stream(m)));

        for (std::size_t f = 0; f < frames; ++f) {
            const auto frame = static_cast<std::int64_t>(f);
            GroundTruthObject obj;
            obj.entity_id = m;
            obj.label = machine.label;
            obj.true_bbox = boxes[f];
            obj.bbox = clipped(boxes[f], spec.frame_width, spec.frame_height);
            obj.clipped = obj.bbox != boxes[f];
            const bool occluded = std::any_of(machine.occlusions.begin(), machine.occlusions.end(),
                                              [frame](const FrameInterval& o) { return o.contains(frame); });
            obj.visible = !occluded && is_valid(obj.bbox);

            // Draw the per-frame noise unconditionally so visibility does not
            // shift the random sequence of later frames.
            const bool missed = rng.bernoulli(noise.miss_prob);
            const double jx = rng.normal(0.0, 1.0);
            const double jy = rng.normal(0.0, 1.0);
            const double jw = rng.normal(0.0, 1.0);
            const double jh = rng.normal(0.0, 1.0);
            const double conf = sample_confidence(rng, noise);

            if (obj.visible && !missed) {
                const double s = noise.bbox_jitter_std;
                BBox det = obj.bbox;
                if (s > 0.0) {
                    det = with_min_side({det.x + s * jx, det.y + s * jy, det.w + s * jw, det.h + s * jh});
                    det = clipped(det, spec.frame_width, spec.frame_height);
                }
                if (is_valid(det)) {
                    result.frames[f].detections.push_back({frame, det, conf, machine.label});
                }
            }
            result.truth.frames[f].objects.push_back(obj);
        }
    }

    Rng clutter(derive_seed(spec.seed, kClutterStream));
    for (std::size_t f = 0; f < frames; ++f) {
        const std::uint64_t count = clutter.poisson(noise.false_positive_rate);
        for (std::uint64_t k = 0; k < count; ++k) {
            const double w = std::min(clutter.uniform(20.0, 120.0), spec.frame_width);
            const double h = std::min(clutter.uniform(20.0, 120.0), spec.frame_height);
            const BBox b{clutter.uniform(0.0, spec.frame_width - w), clutter.uniform(0.0, spec.frame_height - h), w, h};
            const ClassLabel label{static_cast<int>(clutter.below(3))};
            const double conf = sample_confidence(clutter, noise);
            if (is_valid(b)) {
                result.frames[f].detections.push_back({static_cast<std::int64_t>(f), b, conf, label});
            }
        }
    }
    return result;
}

}  // namespace edgeidle::sim
