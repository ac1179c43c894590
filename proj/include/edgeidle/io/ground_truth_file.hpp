#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "edgeidle/sim/generator.hpp"

namespace edgeidle::io {

inline constexpr const char* kGroundTruthSchema = "edgeidle.ground_truth";
inline constexpr int kGroundTruthVersion = 1;

/// JSON lines: a header {"schema","version","fps","entities"}, then one
/// {"frame","objects":[...]} line per frame in frame order.
void write_ground_truth(std::ostream& out, const sim::GroundTruth& gt);
sim::GroundTruth read_ground_truth(std::istream& in);

void write_ground_truth_file(const std::string& path, const sim::GroundTruth& gt);
sim::GroundTruth read_ground_truth_file(const std::string& path);

}  // namespace edgeidle::io
