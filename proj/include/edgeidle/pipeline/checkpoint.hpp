#pragma once

#include <string>

#include "edgeidle/io/format.hpp"
#include "edgeidle/pipeline/pipeline.hpp"

namespace edgeidle::pipeline {

inline constexpr const char* kCheckpointSchema = "edgeidle.checkpoint";
inline constexpr int kCheckpointVersion = 1;

/// Doubles use shortest round-trip form: a restored pipeline continues bit-identically.
io::json checkpoint_to_json(const Checkpoint& c);
Checkpoint checkpoint_from_json(const io::json& j);

void write_checkpoint_file(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint_file(const std::string& path);

}  // namespace edgeidle::pipeline
