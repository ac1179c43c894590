#pragma once

#include <string>

#include <json.hpp>

#include "edgeidle/eval/detection_metrics.hpp"
#include "edgeidle/eval/idle_metrics.hpp"
#include "edgeidle/eval/mot_metrics.hpp"

namespace edgeidle::eval {

nlohmann::json to_json(const IdleReport& r);
nlohmann::json to_json(const MotReport& r);
nlohmann::json to_json(const DetectionReport& r);

/// Aligned "Metric / Idle Identification" table with rows Accuracy,
/// Precision, Recall and F1, values in percent with two decimals.
std::string format_idle_table(const IdleReport& r);

std::string format_mot_table(const MotReport& r);

}  // namespace edgeidle::eval
