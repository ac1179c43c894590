#include "edgeidle/io/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "edgeidle/error.hpp"

namespace edgeidle::io {

std::string fixed6(double value) {
    std::string s;
    append_fixed6(s, value);
    return s;
}

void append_fixed6(std::string& out, double value) {
    if (!std::isfinite(value)) {
        throw ValidationError("cannot serialize non-finite value");
    }
    const std::size_t start = out.size();
    fmt::format_to(std::back_inserter(out), "{:.6f}", value);
    if (out.compare(start, std::string::npos, "-0.000000") == 0) {
        out.erase(start, 1);
    }
}

json schema_header(std::string_view schema, int version) { return {{"schema", schema}, {"version", version}}; }

void check_schema(const json& j, std::string_view schema, int version) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string() || j["schema"] != schema) {
        throw ValidationError("expected a '" + std::string(schema) + "' document");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != version) {
        const std::string found = j.contains("version") ? j["version"].dump() : "none";
        throw SchemaVersionError(std::string(schema) + ": unsupported version " + found + " (expected " +
                                 std::to_string(version) + ")");
    }
}

std::string join_path(const std::string& base, std::string_view key) {
    return base.empty() ? std::string(key) : base + "." + std::string(key);
}

const json& member(const json& j, std::string_view key, const std::string& path) {
    if (!j.is_object()) {
        throw ValidationError((path.empty() ? std::string("document") : path) + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ValidationError(join_path(path, key) + ": missing field");
    }
    return *it;
}

double get_number(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_number()) {
        throw ValidationError(join_path(path, key) + ": expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ValidationError(join_path(path, key) + ": must be finite");
    }
    return d;
}

std::int64_t get_integer(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        throw ValidationError(join_path(path, key) + ": integer out of range");
    }
    if (!v.is_number_integer()) {
        throw ValidationError(join_path(path, key) + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

std::uint64_t get_unsigned(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ValidationError(join_path(path, key) + ": expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

bool get_bool(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_boolean()) {
        throw ValidationError(join_path(path, key) + ": expected true or false");
    }
    return v.get<bool>();
}

std::string get_string(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_string()) {
        throw ValidationError(join_path(path, key) + ": expected a string");
    }
    return v.get<std::string>();
}

double get_number_or(const json& j, std::string_view key, const std::string& path, double fallback) {
    return j.contains(key) ? get_number(j, key, path) : fallback;
}

std::int64_t get_integer_or(const json& j, std::string_view key, const std::string& path, std::int64_t fallback) {
    return j.contains(key) ? get_integer(j, key, path) : fallback;
}

bool get_bool_or(const json& j, std::string_view key, const std::string& path, bool fallback) {
    return j.contains(key) ? get_bool(j, key, path) : fallback;
}

json parse_line(std::string_view text, std::size_t line) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(line, std::string("malformed JSON: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << content;
    if (!out) {
        throw IoError("write failed for '" + path + "'");
    }
}

}  // namespace edgeidle::io
