#include "edgeidle/eval/report.hpp"

#include <fmt/format.h>

namespace edgeidle::eval {
namespace {

nlohmann::json prf(const PrfScores& s) {
    return {{"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn}, {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

}  // namespace

nlohmann::json to_json(const IdleReport& r) {
    return {{"schema", "edgeidle.idle_report"},
            {"version", 1},
            {"accuracy", r.accuracy},
            {"precision", r.precision},
            {"recall", r.recall},
            {"f1", r.f1},
            {"tp", r.counts.tp},
            {"fp", r.counts.fp},
            {"tn", r.counts.tn},
            {"fn", r.counts.fn}};
}

nlohmann::json to_json(const MotReport& r) {
    return {{"schema", "edgeidle.mot_report"},
            {"version", 1},
            {"mota", r.mota},
            {"motp", r.motp},
            {"idf1", r.idf1},
            {"id_precision", r.id_precision},
            {"id_recall", r.id_recall},
            {"id_switches", r.id_switches},
            {"false_positives", r.false_positives},
            {"false_negatives", r.false_negatives},
            {"matches", r.matches},
            {"ground_truth", r.ground_truth}};
}

nlohmann::json to_json(const DetectionReport& r) {
    nlohmann::json classes = nlohmann::json::object();
    for (const auto& [id, s] : r.per_class) {
        classes[std::to_string(id)] = prf(s);
    }
    return {{"schema", "edgeidle.detection_report"}, {"version", 1}, {"overall", prf(r.overall)}, {"per_class", classes}};
}

std::string format_idle_table(const IdleReport& r) {
    std::string out = fmt::format("{:<12}{:>22}\n", "Metric", "Idle Identification");
    const std::pair<const char*, double> rows[] = {
        {"Accuracy", r.accuracy}, {"Precision", r.precision}, {"Recall", r.recall}, {"F1", r.f1}};
    for (const auto& [name, value] : rows) {
        out += fmt::format("{:<12}{:>21.2f}%\n", name, 100.0 * value);
    }
    out += fmt::format("{:<12}{:>22}\n", "Windows",
                       fmt::format("tp={} fp={} tn={} fn={}", r.counts.tp, r.counts.fp, r.counts.tn, r.counts.fn));
    return out;
}

std::string format_mot_table(const MotReport& r) {
    std::string out = fmt::format("{:<16}{:>12}\n", "Metric", "Tracking");
    out += fmt::format("{:<16}{:>11.2f}%\n", "MOTA", 100.0 * r.mota);
    out += fmt::format("{:<16}{:>11.2f}%\n", "MOTP", 100.0 * r.motp);
    out += fmt::format("{:<16}{:>11.2f}%\n", "IDF1", 100.0 * r.idf1);
    out += fmt::format("{:<16}{:>11.2f}%\n", "ID precision", 100.0 * r.id_precision);
    out += fmt::format("{:<16}{:>11.2f}%\n", "ID recall", 100.0 * r.id_recall);
    out += fmt::format("{:<16}{:>12}\n", "ID switches", r.id_switches);
    out += fmt::format("{:<16}{:>12}\n", "False positives", r.false_positives);
    out += fmt::format("{:<16}{:>12}\n", "False negatives", r.false_negatives);
    return out;
}

}  // namespace edgeidle::eval
