#pragma once

#include <string>

#include "edgeidle/io/format.hpp"
#include "edgeidle/sim/scenario.hpp"

namespace edgeidle::io {

inline constexpr const char* kScenarioSchema = "edgeidle.scenario";
inline constexpr int kScenarioVersion = 1;

/// Errors name the offending field, e.g. "machines[0].script[1].duration: must be >= 1".
sim::ScenarioSpec scenario_from_json(const json& j);
json scenario_to_json(const sim::ScenarioSpec& spec);

sim::ScenarioSpec read_scenario_file(const std::string& path);
void write_scenario_file(const std::string& path, const sim::ScenarioSpec& spec);

}  // namespace edgeidle::io
