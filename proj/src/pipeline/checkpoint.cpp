#include "edgeidle/pipeline/checkpoint.hpp"

#include "edgeidle/error.hpp"
#include "edgeidle/io/model_file.hpp"

namespace edgeidle::pipeline {
namespace {

using io::json;

json box_json(const BBox& b) { return {b.x, b.y, b.w, b.h}; }

BBox box_from(const json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw ValidationError("checkpoint: expected [x, y, w, h]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

const char* state_name(tracker::TrackState s) {
    switch (s) {
        case tracker::TrackState::Tentative: return "tentative";
        case tracker::TrackState::Active: return "active";
        case tracker::TrackState::Lost: return "lost";
        case tracker::TrackState::Terminated: break;
    }
    return "terminated";
}

tracker::TrackState state_from(const std::string& s) {
    if (s == "tentative") return tracker::TrackState::Tentative;
    if (s == "active") return tracker::TrackState::Active;
    if (s == "lost") return tracker::TrackState::Lost;
    throw ValidationError("checkpoint: invalid track state '" + s + "'");
}

json tracker_config_json(const tracker::TrackerConfig& c) {
    return {{"high_thresh", c.high_thresh},       {"low_thresh", c.low_thresh},
            {"new_track_thresh", c.new_track_thresh}, {"match_thresh", c.match_thresh},
            {"track_buffer", c.track_buffer},     {"min_box_area", c.min_box_area},
            {"class_gated", c.class_gated}};
}

json record_json(const io::TrackRecord& r) {
    json j = {{"frame", r.frame_index}, {"track", r.track_id.value}, {"cls", r.label.id},
              {"box", box_json(r.bbox)}, {"conf", r.confidence},      {"state", io::to_string(r.state)}};
    if (r.p) {
        j["p"] = *r.p;
    }
    return j;
}

io::TrackRecord record_from(const json& j) {
    io::TrackRecord r;
    r.frame_index = j.at("frame").get<std::int64_t>();
    r.track_id.value = j.at("track").get<std::uint64_t>();
    r.label.id = j.at("cls").get<int>();
    r.bbox = box_from(j.at("box"));
    r.confidence = j.at("conf").get<double>();
    r.state = io::row_state_from_string(j.at("state").get<std::string>());
    if (j.contains("p")) {
        r.p = j["p"].get<double>();
    }
    return r;
}

}  // namespace

json checkpoint_to_json(const Checkpoint& c) {
    json j = io::schema_header(kCheckpointSchema, kCheckpointVersion);
    json tracks = json::array();
    for (const auto& t : c.tracker.tracks) {
        json mean = json::array();
        for (int i = 0; i < 8; ++i) mean.push_back(t.kalman.mean(i));
        json cov = json::array();
        for (int r = 0; r < 8; ++r)
            for (int k = 0; k < 8; ++k) cov.push_back(t.kalman.covariance(r, k));
        tracks.push_back({{"id", t.id.value},
                          {"cls", t.label.id},
                          {"state", state_name(t.state)},
                          {"mean", mean},
                          {"covariance", cov},
                          {"last_box", box_json(t.last_bbox)},
                          {"last_conf", t.last_confidence},
                          {"frames_since_update", t.frames_since_update},
                          {"age", t.age},
                          {"start_frame", t.start_frame},
                          {"last_update_frame", t.last_update_frame}});
    }
    j["tracker"] = {{"config", tracker_config_json(c.tracker.config)},
                    {"next_id", c.tracker.next_id},
                    {"last_frame", c.tracker.last_frame ? json(*c.tracker.last_frame) : json(nullptr)},
                    {"tracks", tracks}};
    j["idle"] = io::model_to_json(c.idle);
    json buffers = json::array();
    for (const auto& b : c.buffers) {
        json centroids = json::array();
        for (const auto& p : b.centroids) centroids.push_back({p.x, p.y});
        buffers.push_back({{"track", b.track_id.value},
                           {"areas", b.areas},
                           {"centroids", centroids},
                           {"first_frame", b.first_frame},
                           {"last_frame", b.last_frame},
                           {"window_index", b.window_index}});
    }
    j["buffers"] = buffers;
    json pending = json::array();
    for (const auto& p : c.pending) {
        pending.push_back({{"row", record_json(p.row)}, {"window", p.window_index}, {"resolved", p.resolved}});
    }
    j["pending"] = pending;
    return j;
}

Checkpoint checkpoint_from_json(const json& j) {
    io::check_schema(j, kCheckpointSchema, kCheckpointVersion);
    try {
        Checkpoint c;
        const json& jt = j.at("tracker");
        const json& jc = jt.at("config");
        auto& tc = c.tracker.config;
        tc.high_thresh = jc.at("high_thresh").get<double>();
        tc.low_thresh = jc.at("low_thresh").get<double>();
        tc.new_track_thresh = jc.at("new_track_thresh").get<double>();
        tc.match_thresh = jc.at("match_thresh").get<double>();
        tc.track_buffer = jc.at("track_buffer").get<int>();
        tc.min_box_area = jc.at("min_box_area").get<double>();
        tc.class_gated = jc.at("class_gated").get<bool>();
        c.tracker.next_id = jt.at("next_id").get<std::uint64_t>();
        if (!jt.at("last_frame").is_null()) {
            c.tracker.last_frame = jt["last_frame"].get<std::int64_t>();
        }
        for (const auto& e : jt.at("tracks")) {
            tracker::Track t;
            t.id.value = e.at("id").get<std::uint64_t>();
            t.label.id = e.at("cls").get<int>();
            t.state = state_from(e.at("state").get<std::string>());
            const json& mean = e.at("mean");
            const json& cov = e.at("covariance");
            if (mean.size() != 8 || cov.size() != 64) {
                throw ValidationError("checkpoint: malformed Kalman state");
            }
            for (int i = 0; i < 8; ++i) t.kalman.mean(i) = mean[i].get<double>();
            for (int r = 0; r < 8; ++r)
                for (int k = 0; k < 8; ++k) t.kalman.covariance(r, k) = cov[r * 8 + k].get<double>();
            t.last_bbox = box_from(e.at("last_box"));
            t.last_confidence = e.at("last_conf").get<double>();
            t.frames_since_update = e.at("frames_since_update").get<std::int64_t>();
            t.age = e.at("age").get<std::int64_t>();
            t.start_frame = e.at("start_frame").get<std::int64_t>();
            t.last_update_frame = e.at("last_update_frame").get<std::int64_t>();
            c.tracker.tracks.push_back(t);
        }
        c.idle = io::model_from_json(j.at("idle"));
        for (const auto& e : j.at("buffers")) {
            idle::WindowBuffer b;
            b.track_id.value = e.at("track").get<std::uint64_t>();
            b.areas = e.at("areas").get<std::vector<double>>();
            for (const auto& p : e.at("centroids")) {
                b.centroids.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            }
            b.first_frame = e.at("first_frame").get<std::int64_t>();
            b.last_frame = e.at("last_frame").get<std::int64_t>();
            b.window_index = e.at("window_index").get<std::uint64_t>();
            c.buffers.push_back(std::move(b));
        }
        for (const auto& e : j.at("pending")) {
            c.pending.push_back({record_from(e.at("row")), e.at("window").get<std::uint64_t>(),
                                 e.at("resolved").get<bool>()});
        }
        return c;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("checkpoint: ") + e.what());
    }
}

void write_checkpoint_file(const std::string& path, const Checkpoint& c) {
    io::write_text_file(path, checkpoint_to_json(c).dump() + "\n");
}

Checkpoint read_checkpoint_file(const std::string& path) { return checkpoint_from_json(io::read_json_file(path)); }

}  // namespace edgeidle::pipeline
