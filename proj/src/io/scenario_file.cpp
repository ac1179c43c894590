#include "edgeidle/io/scenario_file.hpp"

#include "edgeidle/error.hpp"

namespace edgeidle::io {
namespace {

std::string index_path(const std::string& base, std::string_view key, std::size_t i) {
    return join_path(base, key) + "[" + std::to_string(i) + "]";
}

const json& array_member(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_array()) {
        throw ValidationError(join_path(path, key) + ": expected an array");
    }
    return v;
}

ClassLabel parse_class(const json& j, const std::string& path) {
    const json& v = member(j, "class", path);
    const std::string where = join_path(path, "class");
    try {
        if (v.is_string()) {
            return ClassRegistry::builtin().find(v.get<std::string>());
        }
        if (v.is_number_integer()) {
            const ClassLabel label{static_cast<int>(v.get<std::int64_t>())};
            if (!ClassRegistry::builtin().contains(label)) {
                throw ValidationError("unknown class id " + v.dump());
            }
            return label;
        }
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": expected a class name or id");
}

BBox parse_box(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    const std::string where = join_path(path, key);
    if (v.is_array()) {
        if (v.size() != 4) {
            throw ValidationError(where + ": expected [x, y, w, h]");
        }
        BBox b;
        double* fields[] = {&b.x, &b.y, &b.w, &b.h};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!v[i].is_number()) {
                throw ValidationError(where + "[" + std::to_string(i) + "]: expected a number");
            }
            *fields[i] = v[i].get<double>();
        }
        return b;
    }
    return {get_number(v, "x", where), get_number(v, "y", where), get_number(v, "w", where),
            get_number(v, "h", where)};
}

sim::MotionSegment parse_segment(const json& j, const std::string& path) {
    sim::MotionSegment seg;
    seg.duration_frames = get_integer(j, "duration", path);
    const std::string mode = get_string(j, "mode", path);
    if (mode == "stationary") {
        seg.mode = sim::Stationary{get_number_or(j, "jitter_std", path, 0.0)};
    } else if (mode == "linear") {
        seg.mode = sim::Linear{get_number_or(j, "vx", path, 0.0), get_number_or(j, "vy", path, 0.0)};
    } else if (mode == "stop_go") {
        sim::StopGo sg;
        sg.period = get_integer_or(j, "period", path, sg.period);
        sg.duty = get_number_or(j, "duty", path, sg.duty);
        sg.vx = get_number_or(j, "vx", path, 0.0);
        sg.vy = get_number_or(j, "vy", path, 0.0);
        seg.mode = sg;
    } else {
        throw ValidationError(join_path(path, "mode") + ": unknown mode '" + mode +
                              "' (expected stationary, linear or stop_go)");
    }
    return seg;
}

sim::MachineSpec parse_machine(const json& j, const std::string& path) {
    sim::MachineSpec m;
    m.label = parse_class(j, path);
    m.initial = parse_box(j, "initial", path);
    if (j.contains("script")) {
        const json& script = array_member(j, "script", path);
        for (std::size_t i = 0; i < script.size(); ++i) {
            m.script.segments.push_back(parse_segment(script[i], index_path(path, "script", i)));
        }
    }
    if (j.contains("occlusions")) {
        const json& occ = array_member(j, "occlusions", path);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            const std::string where = index_path(path, "occlusions", i);
            if (!occ[i].is_array() || occ[i].size() != 2 || !occ[i][0].is_number_integer() ||
                !occ[i][1].is_number_integer()) {
                throw ValidationError(where + ": expected [begin, end]");
            }
            m.occlusions.push_back({occ[i][0].get<std::int64_t>(), occ[i][1].get<std::int64_t>()});
        }
    }
    return m;
}

json mode_to_json(const sim::MotionSegment& seg) {
    json j;
    j["duration"] = seg.duration_frames;
    std::visit(
        [&j](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, sim::Stationary>) {
                j["mode"] = "stationary";
                j["jitter_std"] = m.jitter_std;
            } else if constexpr (std::is_same_v<T, sim::Linear>) {
                j["mode"] = "linear";
                j["vx"] = m.vx;
                j["vy"] = m.vy;
            } else {
                j["mode"] = "stop_go";
                j["period"] = m.period;
                j["duty"] = m.duty;
                j["vx"] = m.vx;
                j["vy"] = m.vy;
            }
        },
        seg.mode);
    return j;
}

}  // namespace

sim::ScenarioSpec scenario_from_json(const json& j) {
    check_schema(j, kScenarioSchema, kScenarioVersion);
    sim::ScenarioSpec s;
    s.frame_count = get_integer(j, "frame_count", "");
    if (j.contains("frame_size")) {
        const json& fs = member(j, "frame_size", "");
        if (!fs.is_array() || fs.size() != 2 || !fs[0].is_number() || !fs[1].is_number()) {
            throw ValidationError("frame_size: expected [width, height]");
        }
        s.frame_width = fs[0].get<double>();
        s.frame_height = fs[1].get<double>();
    }
    s.fps = get_number_or(j, "fps", "", s.fps);
    if (j.contains("seed")) {
        s.seed = get_unsigned(j, "seed", "");
    }
    if (j.contains("noise")) {
        const json& n = member(j, "noise", "");
        const std::string p = "noise";
        s.noise.miss_prob = get_number_or(n, "miss_prob", p, s.noise.miss_prob);
        s.noise.bbox_jitter_std = get_number_or(n, "bbox_jitter_std", p, s.noise.bbox_jitter_std);
        s.noise.confidence_mean = get_number_or(n, "confidence_mean", p, s.noise.confidence_mean);
        s.noise.confidence_std = get_number_or(n, "confidence_std", p, s.noise.confidence_std);
        s.noise.false_positive_rate = get_number_or(n, "false_positive_rate", p, s.noise.false_positive_rate);
    }
    const json& machines = array_member(j, "machines", "");
    for (std::size_t i = 0; i < machines.size(); ++i) {
        s.machines.push_back(parse_machine(machines[i], index_path("", "machines", i)));
    }
    s.validate();
    return s;
}

json scenario_to_json(const sim::ScenarioSpec& spec) {
    json j = schema_header(kScenarioSchema, kScenarioVersion);
    j["frame_count"] = spec.frame_count;
    j["frame_size"] = {spec.frame_width, spec.frame_height};
    j["fps"] = spec.fps;
    j["seed"] = spec.seed;
    j["noise"] = {{"miss_prob", spec.noise.miss_prob},
                  {"bbox_jitter_std", spec.noise.bbox_jitter_std},
                  {"confidence_mean", spec.noise.confidence_mean},
                  {"confidence_std", spec.noise.confidence_std},
                  {"false_positive_rate", spec.noise.false_positive_rate}};
    json machines = json::array();
    for (const auto& m : spec.machines) {
        json jm;
        jm["class"] = m.label.id;
        jm["initial"] = {m.initial.x, m.initial.y, m.initial.w, m.initial.h};
        json script = json::array();
        for (const auto& seg : m.script.segments) {
            script.push_back(mode_to_json(seg));
        }
        jm["script"] = script;
        json occ = json::array();
        for (const auto& o : m.occlusions) {
            occ.push_back({o.begin, o.end});
        }
        jm["occlusions"] = occ;
        machines.push_back(jm);
    }
    j["machines"] = machines;
    return j;
}

sim::ScenarioSpec read_scenario_file(const std::string& path) {
    const json j = read_json_file(path);
    try {
        return scenario_from_json(j);
    } catch (const SchemaVersionError& e) {
        throw SchemaVersionError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_scenario_file(const std::string& path, const sim::ScenarioSpec& spec) {
    write_text_file(path, scenario_to_json(spec).dump(2) + "\n");
}

}  // namespace edgeidle::io
