#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "edgeidle/error.hpp"
#include "edgeidle/eval/report.hpp"
#include "edgeidle/idle/fit.hpp"
#include "edgeidle/io/config_file.hpp"
#include "edgeidle/io/detections.hpp"
#include "edgeidle/io/ground_truth_file.hpp"
#include "edgeidle/io/model_file.hpp"
#include "edgeidle/io/scenario_file.hpp"
#include "edgeidle/io/tracks.hpp"
#include "edgeidle/io/windows_file.hpp"
#include "edgeidle/pipeline/bench.hpp"
#include "edgeidle/pipeline/checkpoint.hpp"
#include "edgeidle/pipeline/pipeline.hpp"
#include "edgeidle/sim/oracle.hpp"

namespace edgeidle::cli {
namespace {

struct Globals {
    std::string config;
    std::string model;
    std::uint64_t seed = 0;
    std::size_t buffer = 0;
    double fps = 0.0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* buffer_opt = nullptr;
    CLI::Option* fps_opt = nullptr;
};

/// Defaults, then the config file, then a model file, then flags (or their
/// environment mirrors).
io::PipelineConfig resolve_config(const Globals& g) {
    io::PipelineConfig c;
    if (!g.config.empty()) {
        c = io::read_config_file(g.config);
    }
    if (!g.model.empty()) {
        c.model_path = g.model;
        c.idle = io::read_model_file(g.model);
    }
    if (g.buffer_opt->count() > 0) {
        if (g.buffer < 2) {
            throw ValidationError("--buffer: must be >= 2");
        }
        c.idle.capacity = g.buffer;
    }
    if (g.fps_opt->count() > 0) {
        c.idle.fps = g.fps;
    }
    c.validate();
    return c;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return in;
}

std::ofstream open_out(const std::string& path, bool append = false) {
    std::ofstream out(path, append ? std::ios::binary | std::ios::app : std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string scenario;
    std::string detections;
    std::string truth;
};

void cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
    const io::PipelineConfig c = resolve_config(g);
    std::string path = a.scenario;
    if (path.empty()) {
        if (!c.scenario_path) {
            throw ValidationError("simulate: no scenario given (use --scenario or simulator.scenario in the config)");
        }
        path = *c.scenario_path;
    }
    sim::ScenarioSpec spec = io::read_scenario_file(path);
    if (g.seed_opt->count() > 0) {
        spec.seed = g.seed;
    }
    const sim::SimulationResult result = sim::generate(spec);
    io::write_detection_file(a.detections, result.frames);
    if (!a.truth.empty()) {
        io::write_ground_truth_file(a.truth, result.truth);
    }
    std::size_t n = 0;
    for (const auto& f : result.frames) n += f.detections.size();
    out << fmt::format("simulated {} frames, {} detections\n", result.frames.size(), n);
}

// ---- track ------------------------------------------------------------------

struct TrackArgs {
    std::string detections;
    std::string out;
};

void cmd_track(const Globals& g, const TrackArgs& a) {
    const io::PipelineConfig c = resolve_config(g);
    std::ifstream in = open_in(a.detections);
    std::ofstream os = open_out(a.out);
    io::DetectionReader reader(in);
    io::TrackWriter writer(os);
    tracker::ByteTracker t(c.tracker);
    auto emit = [&writer](const std::vector<tracker::TrackedObject>& objects) {
        for (const auto& o : objects) {
            writer.write({o.frame_index, o.track_id, o.label, o.bbox, o.confidence, io::RowState::ActiveUnknown, {}});
        }
    };
    while (auto f = reader.next_frame()) {
        const auto [begin, end] = pipeline::gap_fill_range(t, f->frame_index);
        for (std::int64_t k = begin; k < end; ++k) emit(t.step({}, k));
        emit(t.step(f->detections, f->frame_index));
    }
    finish_out(os, a.out);
}

// ---- idle -------------------------------------------------------------------

struct IdleArgs {
    std::string tracks;
    std::string out;
};

void cmd_idle(const Globals& g, const IdleArgs& a) {
    const io::PipelineConfig c = resolve_config(g);
    std::ifstream in = open_in(a.tracks);
    std::ofstream os = open_out(a.out);
    io::TrackReader reader(in);
    io::TrackWriter writer(os);
    pipeline::IdleStage stage(c.idle, c.tracker.track_buffer + 1);
    std::vector<io::TrackRecord> rows;
    auto flush = [&] {
        for (const auto& r : rows) writer.write(r);
        rows.clear();
    };
    while (auto r = reader.next()) {
        stage.push(*r, rows);
        flush();
    }
    stage.finish(rows);
    flush();
    finish_out(os, a.out);
}

// ---- pipeline ---------------------------------------------------------------

struct PipelineArgs {
    std::vector<std::string> detections;
    std::vector<std::string> outs;
    std::string checkpoint;
    std::int64_t checkpoint_frame = -1;
    std::string resume;
    int jobs = 1;
};

void run_stream(const io::PipelineConfig& c, const std::string& in_path, const std::string& out_path,
                const PipelineArgs& a) {
    std::ifstream in = open_in(in_path);
    std::optional<pipeline::Pipeline> p;
    if (!a.resume.empty()) {
        p.emplace(pipeline::read_checkpoint_file(a.resume));
    } else {
        p.emplace(c.tracker, c.idle);
    }
    const std::optional<std::int64_t> resume_after = p->tracker().last_frame();
    std::ofstream os = open_out(out_path, !a.resume.empty());
    std::optional<io::TrackWriter> fresh;
    if (a.resume.empty()) {
        fresh.emplace(os);
    }
    // A resumed run appends rows below the header written by the first run.
    std::string buf;
    auto write_rows = [&](std::vector<io::TrackRecord>& rows) {
        for (const auto& r : rows) {
            buf = io::format_track_record(r);
            buf += '\n';
            os << buf;
        }
        rows.clear();
    };
    io::DetectionReader reader(in);
    std::vector<io::TrackRecord> rows;
    while (auto f = reader.next_frame()) {
        if (resume_after && f->frame_index <= *resume_after) {
            continue;
        }
        p->process(*f, rows);
        write_rows(rows);
        if (!a.checkpoint.empty() && f->frame_index >= a.checkpoint_frame) {
            pipeline::write_checkpoint_file(a.checkpoint, p->checkpoint());
            finish_out(os, out_path);
            return;
        }
    }
    p->finish(rows);
    write_rows(rows);
    finish_out(os, out_path);
}

void cmd_pipeline(const Globals& g, const PipelineArgs& a, std::ostream& out) {
    const io::PipelineConfig c = resolve_config(g);
    if (a.detections.size() != a.outs.size()) {
        throw ValidationError("pipeline: give one --out per --detections");
    }
    if (a.detections.size() > 1 && (!a.checkpoint.empty() || !a.resume.empty())) {
        throw ValidationError("pipeline: checkpoints apply to a single stream");
    }
    if (!a.checkpoint.empty() && a.checkpoint_frame < 0) {
        throw ValidationError("pipeline: --checkpoint needs --checkpoint-frame");
    }
    const std::size_t n = a.detections.size();
    std::vector<std::exception_ptr> errors(n);
    const std::size_t jobs = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(a.jobs, 1)), 1, n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                run_stream(c, a.detections[i], a.outs[i], a);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    for (std::size_t i = 1; i < jobs; ++i) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    out << fmt::format("processed {} stream{}\n", n, n == 1 ? "" : "s");
}

// ---- fit --------------------------------------------------------------------

struct FitArgs {
    std::string windows;
    std::string out;
    double l2 = idle::FitOptions{}.l2;
    int max_iterations = idle::FitOptions{}.max_iterations;
};

void cmd_fit(const Globals& g, const FitArgs& a, std::ostream& out) {
    io::PipelineConfig c = resolve_config(g);
    const auto windows = io::read_labeled_windows_file(a.windows);
    idle::FitOptions opts;
    opts.l2 = a.l2;
    opts.max_iterations = a.max_iterations;
    opts.positive_label = c.idle.model.positive_label;
    const idle::FitResult fit = idle::fit_model_detailed(windows, opts);
    c.idle.model = fit.model;
    io::write_model_file(a.out, c.idle);
    out << fmt::format("fitted {} windows in {} iterations ({})\n", windows.size(), fit.iterations,
                       fit.converged ? "converged" : "iteration limit");
    out << fmt::format("beta0 {}\nbeta1 {}\nbeta2 {}\ntraining accuracy {:.4f}\n", fit.model.beta0,
                       fit.model.beta1, fit.model.beta2, idle::training_accuracy(windows, fit.model));
}

// ---- eval -------------------------------------------------------------------

struct EvalArgs {
    std::string tracks;
    std::string truth;
    std::string detections;
    std::string json;
    std::string labeled_windows;
};

void cmd_eval(const Globals& g, const EvalArgs& a, std::ostream& out) {
    const io::PipelineConfig c = resolve_config(g);
    const std::vector<io::TrackRecord> rows = io::read_track_file(a.tracks);
    const sim::GroundTruth gt = io::read_ground_truth_file(a.truth);
    const auto tracked = pipeline::to_tracked(rows);
    const eval::MotReport mot = eval::mot_metrics(tracked, gt, c.eval.iou_match);

    std::vector<idle::IdleVerdict> verdicts = pipeline::reconstruct_verdicts(rows, c.idle.capacity);
    std::map<TrackId, std::vector<BBox>> boxes_by_track;
    std::map<TrackId, std::vector<std::int64_t>> frames_by_track;
    for (const auto& r : rows) {
        boxes_by_track[r.track_id].push_back(r.bbox);
        frames_by_track[r.track_id].push_back(r.frame_index);
    }
    for (auto& v : verdicts) {
        const auto& boxes = boxes_by_track[v.track_id];
        const std::size_t start = v.window_index * c.idle.capacity;
        v.features = idle::window_features(
            std::span<const BBox>(boxes).subspan(start, c.idle.capacity), c.idle.mad_variant);
    }
    const auto joined = eval::join_windows(verdicts, mot.owners, gt, c.eval.idle_speed);

    io::json report = {{"mot", eval::to_json(mot)}};
    out << eval::format_mot_table(mot) << '\n';
    if (!joined.empty()) {
        const eval::IdleReport idle = eval::idle_metrics(joined);
        report["idle"] = eval::to_json(idle);
        out << eval::format_idle_table(idle);
    } else {
        out << "no complete idle windows to evaluate\n";
    }
    if (!a.detections.empty()) {
        const auto frames = io::read_detection_file(a.detections);
        const eval::DetectionReport det = eval::detection_prf(frames, gt, c.eval.detection_iou);
        report["detection"] = eval::to_json(det);
        out << fmt::format("\ndetection precision {:.4f} recall {:.4f} F1 {:.4f}\n", det.overall.precision,
                           det.overall.recall, det.overall.f1);
    }
    if (!a.json.empty()) {
        io::write_text_file(a.json, report.dump(2) + "\n");
    }
    if (!a.labeled_windows.empty()) {
        std::vector<idle::LabeledWindow> labeled;
        for (const auto& j : joined) {
            if (j.truth) {
                labeled.push_back({j.verdict.features, *j.truth});
            }
        }
        io::write_labeled_windows_file(a.labeled_windows, labeled);
    }
    if (joined.empty()) {
        throw EmptyEvaluationError("eval: the track file holds no complete idle window");
    }
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
    std::string detections;
    int repetitions = 3;
    bool include_parse = false;
    std::string json;
};

void cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
    const io::PipelineConfig c = resolve_config(g);
    std::ifstream in = open_in(a.detections);
    std::stringstream ss;
    ss << in.rdbuf();
    pipeline::BenchOptions opts;
    opts.repetitions = a.repetitions;
    opts.include_parse = a.include_parse;
    const pipeline::BenchReport r = pipeline::run_bench(ss.str(), c.tracker, c.idle, opts);
    out << pipeline::format_bench(r);
    if (!a.json.empty()) {
        io::write_text_file(a.json, pipeline::bench_to_json(r).dump(2) + "\n");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Idle-state identification for construction machinery from detection streams", "edgeidle"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Pipeline config file")->envname("EDGEIDLE_CONFIG");
    app.add_option("--model", g.model, "Model file (coefficients and window geometry)")->envname("EDGEIDLE_MODEL");
    g.seed_opt = app.add_option("--seed", g.seed, "Simulator seed override")->envname("EDGEIDLE_SEED");
    g.buffer_opt = app.add_option("--buffer", g.buffer, "Observations per idle window")->envname("EDGEIDLE_BUFFER");
    g.fps_opt = app.add_option("--fps", g.fps, "Nominal stream frame rate")->envname("EDGEIDLE_FPS");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Generate detections and ground truth from a scenario");
    sim->add_option("--scenario", sim_args.scenario, "Scenario file (defaults to the config's)");
    sim->add_option("--detections", sim_args.detections, "Output detection stream")->required();
    sim->add_option("--truth", sim_args.truth, "Output ground truth");

    TrackArgs track_args;
    auto* track = app.add_subcommand("track", "Run the tracker alone");
    track->add_option("--detections", track_args.detections, "Input detection stream")->required();
    track->add_option("--out", track_args.out, "Output track file")->required();

    IdleArgs idle_args;
    auto* idle_cmd = app.add_subcommand("idle", "Run idle classification on a track file");
    idle_cmd->add_option("--tracks", idle_args.tracks, "Input track file")->required();
    idle_cmd->add_option("--out", idle_args.out, "Output track file with verdicts")->required();

    PipelineArgs pipe_args;
    auto* pipe = app.add_subcommand("pipeline", "Track and classify detection streams");
    pipe->add_option("--detections", pipe_args.detections, "Input detection stream (repeatable)")->required();
    pipe->add_option("--out", pipe_args.outs, "Output track file, one per input")->required();
    pipe->add_option("--jobs", pipe_args.jobs, "Streams processed in parallel")->check(CLI::PositiveNumber);
    pipe->add_option("--checkpoint", pipe_args.checkpoint, "Write a checkpoint and stop");
    pipe->add_option("--checkpoint-frame", pipe_args.checkpoint_frame, "Frame after which to checkpoint");
    pipe->add_option("--resume", pipe_args.resume, "Continue from a checkpoint, appending to --out");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit the logistic idle model to labeled windows");
    fit->add_option("--windows", fit_args.windows, "Labeled windows file")->required();
    fit->add_option("--out", fit_args.out, "Output model file")->required();
    fit->add_option("--l2", fit_args.l2, "Ridge penalty on the slopes")->check(CLI::NonNegativeNumber);
    fit->add_option("--max-iterations", fit_args.max_iterations, "Gradient ascent iteration cap")
        ->check(CLI::PositiveNumber);

    EvalArgs eval_args;
    auto* ev = app.add_subcommand("eval", "Score a track file against ground truth");
    ev->add_option("--tracks", eval_args.tracks, "Track file with verdicts")->required();
    ev->add_option("--truth", eval_args.truth, "Ground truth file")->required();
    ev->add_option("--detections", eval_args.detections, "Detection stream to score as well");
    ev->add_option("--json", eval_args.json, "Write the reports as JSON");
    ev->add_option("--labeled-windows", eval_args.labeled_windows, "Write oracle-labeled windows for fit");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Time the pipeline on a detection stream");
    bench->add_option("--detections", bench_args.detections, "Input detection stream")->required();
    bench->add_option("--repetitions", bench_args.repetitions, "Timed passes")->check(CLI::PositiveNumber);
    bench->add_flag("--include-parse", bench_args.include_parse, "Time detection parsing too");
    bench->add_option("--json", bench_args.json, "Write the report as JSON");

    std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*sim) cmd_simulate(g, sim_args, out);
        if (*track) cmd_track(g, track_args);
        if (*idle_cmd) cmd_idle(g, idle_args);
        if (*pipe) cmd_pipeline(g, pipe_args, out);
        if (*fit) cmd_fit(g, fit_args, out);
        if (*ev) cmd_eval(g, eval_args, out);
        if (*bench) cmd_bench(g, bench_args, out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace edgeidle::cli
