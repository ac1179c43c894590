#include "edgeidle/eval/detection_metrics.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace edgeidle::eval {
namespace {

void finish(PrfScores& s) {
    s.precision = s.tp + s.fp == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
    s.recall = s.tp + s.fn == 0 ? 0.0 : static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
    s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
}

}  // namespace

DetectionReport detection_prf(std::span<const sim::DetectionFrame> predicted, const sim::GroundTruth& gt,
                              double iou_thresh) {
    DetectionReport report;
    std::unordered_map<std::int64_t, const sim::DetectionFrame*> by_frame;
    for (const sim::DetectionFrame& f : predicted) {
        by_frame[f.frame_index] = &f;
    }

    auto tally = [&](const std::vector<const Detection*>& preds, const std::vector<const sim::GroundTruthObject*>& objs) {
        std::vector<char> used(objs.size(), 0);
        for (const Detection* d : preds) {
            double best = -1.0;
            std::size_t best_idx = objs.size();
            for (std::size_t i = 0; i < objs.size(); ++i) {
                if (used[i] || objs[i]->label != d->label) continue;
                const double iou = bbox_iou(objs[i]->bbox, d->bbox);
                if (iou > best) {
                    best = iou;
                    best_idx = i;
                }
            }
            PrfScores& cls = report.per_class[d->label.id];
            if (best_idx < objs.size() && best >= iou_thresh) {
                used[best_idx] = 1;
                ++cls.tp;
            } else {
                ++cls.fp;
            }
        }
        for (std::size_t i = 0; i < objs.size(); ++i) {
            if (!used[i]) ++report.per_class[objs[i]->label.id].fn;
        }
    };

    std::vector<std::int64_t> frames;
    for (const auto& g : gt.frames) frames.push_back(g.frame_index);
    for (const auto& [f, p] : by_frame) {
        if (f < 0 || f >= static_cast<std::int64_t>(gt.frames.size())) frames.push_back(f);
    }
    std::sort(frames.begin(), frames.end());

    for (std::int64_t f : frames) {
        std::vector<const Detection*> preds;
        if (auto it = by_frame.find(f); it != by_frame.end()) {
            for (const Detection& d : it->second->detections) preds.push_back(&d);
        }
        std::stable_sort(preds.begin(), preds.end(),
                         [](const Detection* a, const Detection* b) { return a->confidence > b->confidence; });
        std::vector<const sim::GroundTruthObject*> objs;
        if (f >= 0 && f < static_cast<std::int64_t>(gt.frames.size())) {
            for (const auto& o : gt.frames[static_cast<std::size_t>(f)].objects) {
                if (o.visible) objs.push_back(&o);
            }
        }
        tally(preds, objs);
    }

    for (auto& [id, s] : report.per_class) {
        finish(s);
        report.overall.tp += s.tp;
        report.overall.fp += s.fp;
        report.overall.fn += s.fn;
    }
    finish(report.overall);
    return report;
}

}  // namespace edgeidle::eval
