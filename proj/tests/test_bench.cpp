#include <sstream>

#include <gtest/gtest.h>

#include "edgeidle/error.hpp"
#include "edgeidle/io/detections.hpp"
#include "edgeidle/pipeline/bench.hpp"
#include "support.hpp"

using namespace edgeidle;
namespace et = edgeidle::testing;
using namespace edgeidle::pipeline;

namespace {

std::string detection_text(std::uint64_t seed, std::int64_t frames) {
    const auto sim = sim::generate(et::grid_scenario(seed, 4, frames));
    std::ostringstream out;
    io::DetectionWriter w(out);
    for (const auto& f : sim.frames) w.write_frame(f);
    return out.str();
}

}  // namespace

TEST(LatencyStats, NearestRank) {
    std::vector<double> s;
    for (int i = 1; i <= 100; ++i) s.push_back(static_cast<double>(101 - i));
    const auto st = latency_stats(s);
    EXPECT_EQ(st.samples, 100u);
    EXPECT_EQ(st.min_ms, 1.0);
    EXPECT_EQ(st.max_ms, 100.0);
    EXPECT_EQ(st.p95_ms, 95.0);
    EXPECT_NEAR(st.mean_ms, 50.5, 1e-12);
    const auto empty = latency_stats({});
    EXPECT_EQ(empty.samples, 0u);
    EXPECT_EQ(empty.mean_ms, 0.0);
}

TEST(LatencyStats, ConstantSampleMeanWithinRange) {
    const auto st = latency_stats(std::vector<double>(7, 0.1));
    EXPECT_LE(st.min_ms, st.mean_ms);
    EXPECT_LE(st.mean_ms, st.max_ms);
}

TEST(Bench, ProcessingMetric) {
    EXPECT_NEAR(processing_metric(61.0, 8.5), 7.176470588235294, 1e-12);
    EXPECT_THROW(processing_metric(10.0, 0.0), ValidationError);
}

TEST(Bench, ReportIsConsistent) {
    const std::string text = detection_text(2, 200);
    BenchOptions opts;
    opts.repetitions = 2;
    opts.include_parse = true;
    const auto r = run_bench(text, {}, {}, opts);
    EXPECT_EQ(r.frames_processed, 400u);
    EXPECT_EQ(r.repetitions, 2);
    EXPECT_GT(r.wall_time, 0.0);
    EXPECT_NEAR(r.throughput_fps, static_cast<double>(r.frames_processed) / r.wall_time, 1e-9 * r.throughput_fps);
    EXPECT_NEAR(r.video_duration, 40.0, 1e-12);
    EXPECT_NEAR(r.speed_factor, r.wall_time / r.video_duration, 1e-12);
    EXPECT_NEAR(r.processing_metric, 20.0 / r.throughput_fps, 1e-12);
    for (const auto* st : {&r.parse, &r.track, &r.idle, &r.frame}) {
        EXPECT_EQ(st->samples, 400u);
        EXPECT_LE(st->min_ms, st->mean_ms);
        EXPECT_LE(st->mean_ms, st->max_ms);
        EXPECT_LE(st->p95_ms, st->max_ms);
    }
    const auto j = bench_to_json(r);
    EXPECT_EQ(j.at("frames_processed").get<std::size_t>(), 400u);
    EXPECT_NE(format_bench(r).find("throughput"), std::string::npos);
}

TEST(Bench, CountsDeterministic) {
    const std::string text = detection_text(5, 150);
    BenchOptions opts;
    opts.repetitions = 1;
    opts.warmup = false;
    const auto a = run_bench(text, {}, {}, opts);
    const auto b = run_bench(text, {}, {}, opts);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.verdicts, b.verdicts);
    EXPECT_GT(a.rows, 0u);
    EXPECT_EQ(a.parse.samples, 0u);
}
