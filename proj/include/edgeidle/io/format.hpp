#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace edgeidle::io {

using nlohmann::json;

/// Canonical fixed-point form with six decimals; negative zero prints as 0.
std::string fixed6(double value);

/// Appends `value` in fixed6 form to `out`.
void append_fixed6(std::string& out, double value);

/// Throws ValidationError unless j["schema"] == schema, SchemaVersionError
/// unless j["version"] == version.
void check_schema(const json& j, std::string_view schema, int version);

json schema_header(std::string_view schema, int version);

/// Typed access to a JSON member. Errors name `path` (e.g. "noise.miss_prob").
const json& member(const json& j, std::string_view key, const std::string& path);
double get_number(const json& j, std::string_view key, const std::string& path);
std::int64_t get_integer(const json& j, std::string_view key, const std::string& path);
std::uint64_t get_unsigned(const json& j, std::string_view key, const std::string& path);
bool get_bool(const json& j, std::string_view key, const std::string& path);
std::string get_string(const json& j, std::string_view key, const std::string& path);

double get_number_or(const json& j, std::string_view key, const std::string& path, double fallback);
std::int64_t get_integer_or(const json& j, std::string_view key, const std::string& path, std::int64_t fallback);
bool get_bool_or(const json& j, std::string_view key, const std::string& path, bool fallback);

std::string join_path(const std::string& base, std::string_view key);

/// Parses one JSON document, rejecting trailing content. Errors carry `line`.
json parse_line(std::string_view text, std::size_t line);

/// Reads a whole file as JSON (IoError when unreadable, ValidationError when malformed).
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace edgeidle::io
