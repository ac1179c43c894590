#include "edgeidle/io/windows_file.hpp"

#include <fstream>

#include "edgeidle/error.hpp"
#include "edgeidle/io/format.hpp"

namespace edgeidle::io {

void write_labeled_windows(std::ostream& out, const std::vector<idle::LabeledWindow>& windows) {
    out << schema_header(kWindowsSchema, kWindowsVersion).dump() << '\n';
    for (const auto& w : windows) {
        json j;
        j["mad_ad"] = w.features.mad_ad;
        j["mad_cd"] = w.features.mad_cd;
        j["n"] = w.features.n;
        j["label"] = idle::to_string(w.label);
        out << j.dump() << '\n';
    }
    if (!out) {
        throw IoError("write failed");
    }
}

std::vector<idle::LabeledWindow> read_labeled_windows(std::istream& in) {
    std::vector<idle::LabeledWindow> windows;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const json j = parse_line(text, line);
        if (j.is_object() && j.contains("schema")) {
            if (line != 1) {
                throw ParseError(line, "schema line must come first");
            }
            check_schema(j, kWindowsSchema, kWindowsVersion);
            continue;
        }
        try {
            idle::LabeledWindow w;
            w.features.mad_ad = get_number(j, "mad_ad", "");
            w.features.mad_cd = get_number(j, "mad_cd", "");
            w.features.n = static_cast<std::size_t>(get_integer_or(j, "n", "", 0));
            w.label = idle::idle_state_from_string(get_string(j, "label", ""));
            if (w.features.mad_ad < 0.0 || w.features.mad_cd < 0.0) {
                throw ValidationError("features must be nonnegative");
            }
            windows.push_back(w);
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ParseError(line, e.what());
        }
    }
    if (in.bad()) {
        throw IoError("read failed at line " + std::to_string(line));
    }
    return windows;
}

void write_labeled_windows_file(const std::string& path, const std::vector<idle::LabeledWindow>& windows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    write_labeled_windows(out, windows);
}

std::vector<idle::LabeledWindow> read_labeled_windows_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    return read_labeled_windows(in);
}

}  // namespace edgeidle::io
