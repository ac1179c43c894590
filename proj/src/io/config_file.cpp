#include "edgeidle/io/config_file.hpp"

#include <cmath>
#include <filesystem>

#include "edgeidle/error.hpp"
#include "edgeidle/io/model_file.hpp"

namespace edgeidle::io {
namespace {

std::string resolve(const std::string& base_dir, const std::string& p) {
    const std::filesystem::path path(p);
    if (path.is_absolute() || base_dir.empty()) {
        return p;
    }
    return (std::filesystem::path(base_dir) / path).string();
}

tracker::TrackerConfig parse_tracker(const json& j) {
    const std::string p = "tracker";
    tracker::TrackerConfig c;
    c.high_thresh = get_number_or(j, "high_thresh", p, c.high_thresh);
    c.low_thresh = get_number_or(j, "low_thresh", p, c.low_thresh);
    c.new_track_thresh = get_number_or(j, "new_track_thresh", p, c.new_track_thresh);
    c.match_thresh = get_number_or(j, "match_thresh", p, c.match_thresh);
    c.track_buffer = static_cast<int>(get_integer_or(j, "track_buffer", p, c.track_buffer));
    c.min_box_area = get_number_or(j, "min_box_area", p, c.min_box_area);
    c.class_gated = get_bool_or(j, "class_gated", p, c.class_gated);
    try {
        c.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(p + ": " + e.what());
    }
    return c;
}

}  // namespace

void EvalConfig::validate() const {
    if (!(iou_match > 0.0 && iou_match <= 1.0)) throw ValidationError("eval.iou_match: must be in (0, 1]");
    if (!(detection_iou > 0.0 && detection_iou <= 1.0)) {
        throw ValidationError("eval.detection_iou: must be in (0, 1]");
    }
    if (!(idle_speed > 0.0) || !std::isfinite(idle_speed)) throw ValidationError("eval.idle_speed: must be > 0");
}

void PipelineConfig::validate() const {
    tracker.validate();
    idle.validate();
    eval.validate();
}

PipelineConfig config_from_json(const json& j, const std::string& base_dir) {
    check_schema(j, kConfigSchema, kConfigVersion);
    PipelineConfig c;
    if (j.contains("tracker")) {
        c.tracker = parse_tracker(member(j, "tracker", ""));
    }
    if (j.contains("idle")) {
        const json& ji = member(j, "idle", "");
        const std::string p = "idle";
        if (ji.contains("model")) {
            const json& m = member(ji, "model", p);
            if (m.is_string()) {
                c.model_path = resolve(base_dir, m.get<std::string>());
                c.idle = read_model_file(*c.model_path);
            } else if (m.is_object()) {
                const std::string mp = "idle.model";
                c.idle.model.beta0 = get_number(m, "beta0", mp);
                c.idle.model.beta1 = get_number(m, "beta1", mp);
                c.idle.model.beta2 = get_number(m, "beta2", mp);
                if (m.contains("positive_label")) {
                    c.idle.model.positive_label = idle::idle_state_from_string(get_string(m, "positive_label", mp));
                }
            } else {
                throw ValidationError("idle.model: expected a path or an object");
            }
        }
        const std::int64_t capacity = get_integer_or(ji, "capacity", p, static_cast<std::int64_t>(c.idle.capacity));
        if (capacity < 2) {
            throw ValidationError("idle.capacity: must be >= 2");
        }
        c.idle.capacity = static_cast<std::size_t>(capacity);
        c.idle.fps = get_number_or(ji, "fps", p, c.idle.fps);
        if (ji.contains("mad_variant")) {
            c.idle.mad_variant = mad_variant_from_string(get_string(ji, "mad_variant", p));
        }
        try {
            c.idle.validate();
        } catch (const ValidationError& e) {
            throw ValidationError(p + ": " + e.what());
        }
    }
    if (j.contains("simulator")) {
        const json& js = member(j, "simulator", "");
        if (js.contains("scenario")) {
            c.scenario_path = resolve(base_dir, get_string(js, "scenario", "simulator"));
        }
    }
    if (j.contains("eval")) {
        const json& je = member(j, "eval", "");
        c.eval.iou_match = get_number_or(je, "iou_match", "eval", c.eval.iou_match);
        c.eval.detection_iou = get_number_or(je, "detection_iou", "eval", c.eval.detection_iou);
        c.eval.idle_speed = get_number_or(je, "idle_speed", "eval", c.eval.idle_speed);
        c.eval.validate();
    }
    return c;
}

json config_to_json(const PipelineConfig& c) {
    json j = schema_header(kConfigSchema, kConfigVersion);
    j["tracker"] = {{"high_thresh", c.tracker.high_thresh},   {"low_thresh", c.tracker.low_thresh},
                    {"new_track_thresh", c.tracker.new_track_thresh}, {"match_thresh", c.tracker.match_thresh},
                    {"track_buffer", c.tracker.track_buffer}, {"min_box_area", c.tracker.min_box_area},
                    {"class_gated", c.tracker.class_gated}};
    json model = c.model_path ? json(*c.model_path)
                              : json{{"beta0", c.idle.model.beta0},
                                     {"beta1", c.idle.model.beta1},
                                     {"beta2", c.idle.model.beta2},
                                     {"positive_label", idle::to_string(c.idle.model.positive_label)}};
    j["idle"] = {{"capacity", c.idle.capacity},
                 {"fps", c.idle.fps},
                 {"mad_variant", to_string(c.idle.mad_variant)},
                 {"model", model}};
    if (c.scenario_path) {
        j["simulator"] = {{"scenario", *c.scenario_path}};
    }
    j["eval"] = {{"iou_match", c.eval.iou_match},
                 {"detection_iou", c.eval.detection_iou},
                 {"idle_speed", c.eval.idle_speed}};
    return j;
}

PipelineConfig read_config_file(const std::string& path) {
    const json j = read_json_file(path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    try {
        return config_from_json(j, base);
    } catch (const SchemaVersionError& e) {
        throw SchemaVersionError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

}  // namespace edgeidle::io
