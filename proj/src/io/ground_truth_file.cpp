#include "edgeidle/io/ground_truth_file.hpp"

#include <fstream>

#include <fmt/format.h>

#include "edgeidle/error.hpp"
#include "edgeidle/io/format.hpp"

namespace edgeidle::io {
namespace {

void append_box(std::string& s, const BBox& b) {
    s += '[';
    append_fixed6(s, b.x);
    s += ',';
    append_fixed6(s, b.y);
    s += ',';
    append_fixed6(s, b.w);
    s += ',';
    append_fixed6(s, b.h);
    s += ']';
}

BBox box_from(const json& j, std::string_view key, const std::string& path) {
    const json& v = member(j, key, path);
    if (!v.is_array() || v.size() != 4) {
        throw ValidationError(join_path(path, key) + ": expected [x, y, w, h]");
    }
    for (const auto& e : v) {
        if (!e.is_number()) {
            throw ValidationError(join_path(path, key) + ": expected numbers");
        }
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

}  // namespace

void write_ground_truth(std::ostream& out, const sim::GroundTruth& gt) {
    json header = schema_header(kGroundTruthSchema, kGroundTruthVersion);
    header["fps"] = gt.fps;
    header["entities"] = gt.entity_count;
    out << header.dump() << '\n';
    std::string s;
    for (const auto& f : gt.frames) {
        s = fmt::format("{{\"frame\":{},\"objects\":[", f.frame_index);
        for (std::size_t i = 0; i < f.objects.size(); ++i) {
            const auto& o = f.objects[i];
            if (i > 0) s += ',';
            fmt::format_to(std::back_inserter(s), "{{\"id\":{},\"cls\":{},\"box\":", o.entity_id, o.label.id);
            append_box(s, o.bbox);
            s += ",\"true_box\":";
            append_box(s, o.true_bbox);
            fmt::format_to(std::back_inserter(s), ",\"visible\":{},\"clipped\":{}}}", o.visible, o.clipped);
        }
        s += "]}\n";
        out << s;
    }
    if (!out) {
        throw IoError("write failed");
    }
}

sim::GroundTruth read_ground_truth(std::istream& in) {
    sim::GroundTruth gt;
    std::string text;
    std::size_t line = 0;
    bool header = false;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const json j = parse_line(text, line);
        try {
            if (!header) {
                check_schema(j, kGroundTruthSchema, kGroundTruthVersion);
                gt.fps = get_number(j, "fps", "");
                gt.entity_count = get_unsigned(j, "entities", "");
                header = true;
                continue;
            }
            sim::GroundTruthFrame f;
            f.frame_index = get_integer(j, "frame", "");
            if (f.frame_index != static_cast<std::int64_t>(gt.frames.size())) {
                throw OrderingError("line " + std::to_string(line) + ": expected frame " +
                                    std::to_string(gt.frames.size()) + ", found " + std::to_string(f.frame_index));
            }
            const json& objects = member(j, "objects", "");
            if (!objects.is_array()) {
                throw ValidationError("objects: expected an array");
            }
            for (std::size_t i = 0; i < objects.size(); ++i) {
                const std::string p = "objects[" + std::to_string(i) + "]";
                sim::GroundTruthObject o;
                o.entity_id = get_unsigned(objects[i], "id", p);
                if (o.entity_id >= gt.entity_count) {
                    throw ValidationError(p + ".id: exceeds entity count");
                }
                o.label.id = static_cast<int>(get_integer(objects[i], "cls", p));
                o.bbox = box_from(objects[i], "box", p);
                o.true_bbox = box_from(objects[i], "true_box", p);
                o.visible = get_bool(objects[i], "visible", p);
                o.clipped = get_bool_or(objects[i], "clipped", p, false);
                f.objects.push_back(o);
            }
            gt.frames.push_back(std::move(f));
        } catch (const ParseError&) {
            throw;
        } catch (const OrderingError&) {
            throw;
        } catch (const SchemaVersionError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ParseError(line, e.what());
        }
    }
    if (in.bad()) {
        throw IoError("read failed at line " + std::to_string(line));
    }
    if (!header) {
        throw ValidationError("ground truth: missing header");
    }
    return gt;
}

void write_ground_truth_file(const std::string& path, const sim::GroundTruth& gt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_ground_truth(out, gt);
}

sim::GroundTruth read_ground_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_ground_truth(in);
}

}  // namespace edgeidle::io
