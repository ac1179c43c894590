#pragma once

#include <optional>
#include <string>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/io/format.hpp"
#include "edgeidle/tracker/byte_tracker.hpp"

namespace edgeidle::io {

inline constexpr const char* kConfigSchema = "edgeidle.config";
inline constexpr int kConfigVersion = 1;

struct EvalConfig {
    double iou_match = 0.5;      // MOT correspondence threshold
    double detection_iou = 0.5;  // detection precision/recall threshold
    double idle_speed = 0.5;     // oracle eps_v, px per frame

    void validate() const;
};

/// Every section is optional; absent fields keep their defaults. Relative
/// paths are resolved against the config file's directory.
struct PipelineConfig {
    tracker::TrackerConfig tracker;
    idle::IdleConfig idle;
    std::optional<std::string> model_path;
    std::optional<std::string> scenario_path;
    EvalConfig eval;

    void validate() const;
};

/// `base_dir` anchors relative model and scenario paths. A referenced model
/// file is loaded; explicit idle fields in the config override it.
PipelineConfig config_from_json(const json& j, const std::string& base_dir = "");
json config_to_json(const PipelineConfig& config);

PipelineConfig read_config_file(const std::string& path);

}  // namespace edgeidle::io
