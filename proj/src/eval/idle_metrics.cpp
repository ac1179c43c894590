#include "edgeidle/eval/idle_metrics.hpp"

#include "edgeidle/error.hpp"
#include "edgeidle/sim/oracle.hpp"

namespace edgeidle::eval {
namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

IdleReport idle_report(const ConfusionCounts& c) {
    IdleReport r;
    r.counts = c;
    r.accuracy = ratio(c.tp + c.tn, c.total());
    r.precision = ratio(c.tp, c.tp + c.fp);
    r.recall = ratio(c.tp, c.tp + c.fn);
    r.f1 = r.precision + r.recall > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

IdleReport idle_metrics(std::span<const JoinedWindow> joined) {
    if (joined.empty()) {
        throw EmptyEvaluationError("idle_metrics: no verdicts to evaluate");
    }
    ConfusionCounts c;
    for (const JoinedWindow& j : joined) {
        const bool predicted_idle = j.verdict.state == idle::IdleState::Idle;
        if (!j.truth) {
            (predicted_idle ? c.fp : c.fn) += 1;
            continue;
        }
        const bool truly_idle = *j.truth == idle::IdleState::Idle;
        if (predicted_idle) {
            (truly_idle ? c.tp : c.fp) += 1;
        } else {
            (truly_idle ? c.fn : c.tn) += 1;
        }
    }
    return idle_report(c);
}

std::vector<JoinedWindow> join_windows(std::span<const idle::IdleVerdict> verdicts,
                                       const std::map<TrackId, std::optional<std::uint64_t>>& owners,
                                       const sim::GroundTruth& gt, double eps_v) {
    std::vector<JoinedWindow> out;
    out.reserve(verdicts.size());
    for (const idle::IdleVerdict& v : verdicts) {
        JoinedWindow j{v, std::nullopt, std::nullopt};
        if (auto it = owners.find(v.track_id); it != owners.end() && it->second) {
            j.entity = it->second;
            j.truth = sim::oracle_label_for_span(gt, *it->second, v.first_frame, v.last_frame, eps_v);
        }
        out.push_back(j);
    }
    return out;
}

}  // namespace edgeidle::eval
