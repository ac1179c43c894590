#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/io/format.hpp"
#include "edgeidle/tracker/byte_tracker.hpp"

namespace edgeidle::pipeline {

struct LatencyStats {
    double mean_ms = 0.0;
    double min_ms = 0.0;
    double max_ms = 0.0;
    double p95_ms = 0.0;
    std::size_t samples = 0;
};

/// Nearest-rank statistics; all zero for an empty sample.
LatencyStats latency_stats(std::vector<double> samples_ms);

/// Seconds of processing per second of frame rate, the throughput-normalized
/// duration used to compare runs: video_seconds / fps.
double processing_metric(double video_seconds, double fps);

struct BenchOptions {
    int repetitions = 3;
    bool include_parse = false;  // time detection parsing as its own stage
    bool warmup = true;          // one untimed pass first
};

struct BenchReport {
    std::size_t frames_processed = 0;
    double wall_time = 0.0;  // seconds, timed repetitions only
    double throughput_fps = 0.0;
    LatencyStats parse;  // per frame; empty unless include_parse
    LatencyStats track;
    LatencyStats idle;
    LatencyStats frame;  // end to end per frame
    double video_duration = 0.0;  // seconds of stream at the nominal fps
    double speed_factor = 0.0;    // wall_time / video_duration
    double processing_metric = 0.0;  // one pass of video seconds / throughput_fps
    // Deterministic fields, identical across runs on the same input.
    std::size_t rows = 0;
    std::size_t verdicts = 0;
    int repetitions = 0;
};

/// Runs the pipeline over the detection text `repetitions` times.
BenchReport run_bench(const std::string& detection_text, const tracker::TrackerConfig& tracker_config,
                      const idle::IdleConfig& idle_config, const BenchOptions& options = {});

io::json bench_to_json(const BenchReport& r);
std::string format_bench(const BenchReport& r);

}  // namespace edgeidle::pipeline
