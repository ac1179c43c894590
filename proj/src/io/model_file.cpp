#include "edgeidle/io/model_file.hpp"

#include "edgeidle/error.hpp"

namespace edgeidle::io {

std::string_view to_string(idle::MadVariant v) noexcept {
    return v == idle::MadVariant::MedianOfDeviations ? "median_of_deviations" : "as_printed";
}

idle::MadVariant mad_variant_from_string(std::string_view s) {
    if (s == "as_printed") return idle::MadVariant::AsPrinted;
    if (s == "median_of_deviations") return idle::MadVariant::MedianOfDeviations;
    throw ValidationError("unknown mad_variant '" + std::string(s) + "'");
}

json model_to_json(const idle::IdleConfig& config) {
    json j = schema_header(kModelSchema, kModelVersion);
    j["beta0"] = config.model.beta0;
    j["beta1"] = config.model.beta1;
    j["beta2"] = config.model.beta2;
    j["positive_label"] = idle::to_string(config.model.positive_label);
    j["mad_variant"] = to_string(config.mad_variant);
    j["capacity"] = config.capacity;
    j["fps"] = config.fps;
    return j;
}

idle::IdleConfig model_from_json(const json& j) {
    check_schema(j, kModelSchema, kModelVersion);
    idle::IdleConfig c;
    c.model.beta0 = get_number(j, "beta0", "");
    c.model.beta1 = get_number(j, "beta1", "");
    c.model.beta2 = get_number(j, "beta2", "");
    if (j.contains("positive_label")) {
        c.model.positive_label = idle::idle_state_from_string(get_string(j, "positive_label", ""));
    }
    if (j.contains("mad_variant")) {
        c.mad_variant = mad_variant_from_string(get_string(j, "mad_variant", ""));
    }
    const std::int64_t capacity = get_integer_or(j, "capacity", "", static_cast<std::int64_t>(c.capacity));
    if (capacity < 2) {
        throw ValidationError("capacity: must be >= 2");
    }
    c.capacity = static_cast<std::size_t>(capacity);
    c.fps = get_number_or(j, "fps", "", c.fps);
    c.validate();
    return c;
}

idle::IdleConfig read_model_file(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return model_from_json(j);
    } catch (const SchemaVersionError& e) {
        throw SchemaVersionError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_model_file(const std::string& path, const idle::IdleConfig& config) {
    write_text_file(path, model_to_json(config).dump(2) + "\n");
}

}  // namespace edgeidle::io
