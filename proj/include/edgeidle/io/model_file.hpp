#pragma once

#include <string>
#include <string_view>

#include "edgeidle/idle/engine.hpp"
#include "edgeidle/io/format.hpp"

namespace edgeidle::io {

inline constexpr const char* kModelSchema = "edgeidle.model";
inline constexpr int kModelVersion = 1;

std::string_view to_string(idle::MadVariant v) noexcept;
idle::MadVariant mad_variant_from_string(std::string_view s);

/// Coefficients plus the window geometry they were fitted for. Doubles are
/// written in shortest round-trip form, so read(write(c)) == c exactly.
json model_to_json(const idle::IdleConfig& config);
idle::IdleConfig model_from_json(const json& j);

idle::IdleConfig read_model_file(const std::string& path);
void write_model_file(const std::string& path, const idle::IdleConfig& config);

}  // namespace edgeidle::io
