#include "edgeidle/pipeline/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "edgeidle/error.hpp"
#include "edgeidle/io/detections.hpp"
#include "edgeidle/pipeline/pipeline.hpp"

namespace edgeidle::pipeline {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

struct PassResult {
    std::size_t frames = 0;
    std::size_t rows = 0;
    std::size_t verdicts = 0;
};

struct Samples {
    std::vector<double> parse, track, idle, frame;
};

PassResult run_pass(const std::string& text, const std::vector<sim::DetectionFrame>* parsed,
                    const tracker::TrackerConfig& tc, const idle::IdleConfig& ic, Samples* samples) {
    Pipeline p(tc, ic);
    p.set_timing(samples != nullptr);
    std::vector<io::TrackRecord> out;
    PassResult r;
    auto handle = [&](const sim::DetectionFrame& f, double parse_ms) {
        const auto t0 = Clock::now();
        p.process(f, out);
        const double total = ms_since(t0);
        if (samples) {
            if (parsed == nullptr) samples->parse.push_back(parse_ms);
            samples->track.push_back(p.last_times().track_ms);
            samples->idle.push_back(p.last_times().idle_ms);
            samples->frame.push_back(total + parse_ms);
        }
        r.verdicts += p.verdicts().size();
        ++r.frames;
    };
    if (parsed) {
        for (const auto& f : *parsed) handle(f, 0.0);
    } else {
        std::istringstream in(text);
        io::DetectionReader reader(in);
        while (true) {
            const auto t0 = Clock::now();
            auto f = reader.next_frame();
            const double parse_ms = ms_since(t0);
            if (!f) break;
            handle(*f, parse_ms);
        }
    }
    p.finish(out);
    r.rows = out.size();
    return r;
}

}  // namespace

LatencyStats latency_stats(std::vector<double> samples) {
    LatencyStats s;
    s.samples = samples.size();
    if (samples.empty()) {
        return s;
    }
    std::sort(samples.begin(), samples.end());
    s.min_ms = samples.front();
    s.max_ms = samples.back();
    // Clamp so floating-point summation can never push the mean outside [min, max].
    s.mean_ms = std::clamp(std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size()),
                           s.min_ms, s.max_ms);
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(samples.size())));
    s.p95_ms = samples[std::max<std::size_t>(rank, 1) - 1];
    return s;
}

double processing_metric(double video_seconds, double fps) {
    if (!(fps > 0.0)) {
        throw ValidationError("fps must be > 0");
    }
    return video_seconds / fps;
}

BenchReport run_bench(const std::string& text, const tracker::TrackerConfig& tc, const idle::IdleConfig& ic,
                      const BenchOptions& options) {
    if (options.repetitions < 1) {
        throw ValidationError("repetitions must be >= 1");
    }
    std::vector<sim::DetectionFrame> parsed;
    if (!options.include_parse) {
        std::istringstream in(text);
        parsed = io::read_detection_frames(in);
    }
    const auto* source = options.include_parse ? nullptr : &parsed;
    if (options.warmup) {
        run_pass(text, source, tc, ic, nullptr);
    }
    Samples samples;
    BenchReport r;
    r.repetitions = options.repetitions;
    const auto start = Clock::now();
    for (int i = 0; i < options.repetitions; ++i) {
        const PassResult pass = run_pass(text, source, tc, ic, &samples);
        if (i == 0) {
            r.rows = pass.rows;
            r.verdicts = pass.verdicts;
        } else if (pass.rows != r.rows || pass.verdicts != r.verdicts) {
            throw InvariantError("benchmark repetitions disagree on output counts");
        }
        r.frames_processed += pass.frames;
    }
    r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    r.throughput_fps = r.wall_time > 0.0 ? static_cast<double>(r.frames_processed) / r.wall_time : 0.0;
    r.parse = latency_stats(std::move(samples.parse));
    r.track = latency_stats(std::move(samples.track));
    r.idle = latency_stats(std::move(samples.idle));
    r.frame = latency_stats(std::move(samples.frame));
    r.video_duration = static_cast<double>(r.frames_processed) / ic.fps;
    r.speed_factor = r.video_duration > 0.0 ? r.wall_time / r.video_duration : 0.0;
    if (r.throughput_fps > 0.0) {
        r.processing_metric = processing_metric(r.video_duration / options.repetitions, r.throughput_fps);
    }
    return r;
}

io::json bench_to_json(const BenchReport& r) {
    auto stats = [](const LatencyStats& s) {
        return io::json{{"mean_ms", s.mean_ms}, {"min_ms", s.min_ms}, {"max_ms", s.max_ms},
                        {"p95_ms", s.p95_ms},   {"samples", s.samples}};
    };
    return {{"schema", "edgeidle.bench"},
            {"version", 1},
            {"frames_processed", r.frames_processed},
            {"wall_time_s", r.wall_time},
            {"throughput_fps", r.throughput_fps},
            {"latency", {{"parse", stats(r.parse)}, {"track", stats(r.track)}, {"idle", stats(r.idle)},
                         {"frame", stats(r.frame)}}},
            {"video_duration_s", r.video_duration},
            {"speed_factor", r.speed_factor},
            {"processing_metric", r.processing_metric},
            {"rows", r.rows},
            {"verdicts", r.verdicts},
            {"repetitions", r.repetitions}};
}

std::string format_bench(const BenchReport& r) {
    std::string s = fmt::format("frames processed  {}\nwall time         {:.4f} s\nthroughput        {:.1f} FPS\n"
                                "video duration    {:.2f} s\nspeed factor      {:.4f}\nprocessing metric {:.4f}\n",
                                r.frames_processed, r.wall_time, r.throughput_fps, r.video_duration,
                                r.speed_factor, r.processing_metric);
    s += fmt::format("{:<8}{:>12}{:>12}{:>12}{:>12}\n", "stage", "mean ms", "min ms", "max ms", "p95 ms");
    auto row = [&s](const char* name, const LatencyStats& st) {
        if (st.samples == 0) return;
        s += fmt::format("{:<8}{:>12.4f}{:>12.4f}{:>12.4f}{:>12.4f}\n", name, st.mean_ms, st.min_ms, st.max_ms,
                         st.p95_ms);
    };
    row("parse", r.parse);
    row("track", r.track);
    row("idle", r.idle);
    row("frame", r.frame);
    return s;
}

}  // namespace edgeidle::pipeline
