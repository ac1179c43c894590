#include "edgeidle/eval/mot_metrics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <vector>

#include "edgeidle/error.hpp"
#include "edgeidle/tracker/hungarian.hpp"

namespace edgeidle::eval {
namespace {

using tracker::CostMatrix;
using tracker::TrackedObject;

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept {
        return std::hash<std::uint64_t>{}(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
    }
};

}  // namespace

MotReport mot_metrics(std::span<const TrackedObject> tracked, const sim::GroundTruth& gt, double iou_match) {
    MotReport r;
    std::unordered_map<std::uint64_t, TrackId> last_track;  // entity -> most recent matched track
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::size_t, PairHash> id_overlap;
    std::map<TrackId, std::map<std::uint64_t, std::size_t>> match_tally;
    std::map<TrackId, std::size_t> track_frames;
    std::unordered_map<std::uint64_t, std::size_t> entity_frames;
    std::size_t total_hyp = 0;
    double iou_sum = 0.0;

    for (std::size_t k = 1; k < tracked.size(); ++k) {
        if (tracked[k].frame_index < tracked[k - 1].frame_index) {
            throw OrderingError("mot_metrics: tracked stream is not ordered by frame");
        }
    }
    std::size_t cursor = 0;
    while (cursor < tracked.size() && tracked[cursor].frame_index < 0) {
        ++r.false_positives;
        ++total_hyp;
        ++track_frames[tracked[cursor++].track_id];
    }
    const auto frame_count = static_cast<std::int64_t>(gt.frames.size());
    const std::int64_t end_frame =
        std::max(frame_count, tracked.empty() ? std::int64_t{0} : tracked.back().frame_index + 1);
    std::vector<const TrackedObject*> hyps;
    std::vector<const sim::GroundTruthObject*> objs;

    for (std::int64_t f = 0; f < end_frame; ++f) {
        hyps.clear();
        objs.clear();
        while (cursor < tracked.size() && tracked[cursor].frame_index == f) {
            hyps.push_back(&tracked[cursor++]);
        }
        if (f < frame_count) {
            for (const sim::GroundTruthObject& o : gt.frames[static_cast<std::size_t>(f)].objects) {
                if (o.visible) {
                    objs.push_back(&o);
                }
            }
        }
        r.ground_truth += objs.size();
        total_hyp += hyps.size();
        for (const auto* h : hyps) ++track_frames[h->track_id];
        for (const auto* o : objs) ++entity_frames[o->entity_id];

        CostMatrix iou(objs.size(), hyps.size());
        for (std::size_t i = 0; i < objs.size(); ++i) {
            for (std::size_t j = 0; j < hyps.size(); ++j) {
                iou(i, j) = bbox_iou(objs[i]->bbox, hyps[j]->bbox);
                if (iou(i, j) >= iou_match) {
                    ++id_overlap[{objs[i]->entity_id, hyps[j]->track_id.value}];
                }
            }
        }

        std::vector<char> obj_done(objs.size(), 0);
        std::vector<char> hyp_done(hyps.size(), 0);
        std::vector<std::pair<std::size_t, std::size_t>> matched;
        for (std::size_t i = 0; i < objs.size(); ++i) {
            auto it = last_track.find(objs[i]->entity_id);
            if (it == last_track.end()) continue;
            for (std::size_t j = 0; j < hyps.size(); ++j) {
                if (!hyp_done[j] && hyps[j]->track_id == it->second && iou(i, j) >= iou_match) {
                    obj_done[i] = hyp_done[j] = 1;
                    matched.emplace_back(i, j);
                    break;
                }
            }
        }
        std::vector<std::size_t> rest_obj, rest_hyp;
        for (std::size_t i = 0; i < objs.size(); ++i) if (!obj_done[i]) rest_obj.push_back(i);
        for (std::size_t j = 0; j < hyps.size(); ++j) if (!hyp_done[j]) rest_hyp.push_back(j);
        CostMatrix cost(rest_obj.size(), rest_hyp.size());
        for (std::size_t a = 0; a < rest_obj.size(); ++a) {
            for (std::size_t b = 0; b < rest_hyp.size(); ++b) {
                cost(a, b) = 1.0 - iou(rest_obj[a], rest_hyp[b]);
            }
        }
        for (auto [a, b] : tracker::hungarian_assign(cost, 1.0 - iou_match).matches) {
            const std::size_t i = rest_obj[a];
            const std::size_t j = rest_hyp[b];
            matched.emplace_back(i, j);
            auto it = last_track.find(objs[i]->entity_id);
            if (it != last_track.end() && it->second != hyps[j]->track_id) {
                ++r.id_switches;
            }
        }

        r.false_negatives += objs.size() - matched.size();
        r.false_positives += hyps.size() - matched.size();
        for (auto [i, j] : matched) {
            last_track[objs[i]->entity_id] = hyps[j]->track_id;
            iou_sum += iou(i, j);
            ++match_tally[hyps[j]->track_id][objs[i]->entity_id];
        }
        r.matches += matched.size();
    }

    const double gt_count = static_cast<double>(r.ground_truth);
    r.mota = 1.0 - static_cast<double>(r.false_negatives + r.false_positives + r.id_switches) / std::max(gt_count, 1.0);
    r.motp = r.matches == 0 ? 0.0 : iou_sum / static_cast<double>(r.matches);

    // Identity metrics: one-to-one entity/track pairing maximising co-detections.
    std::vector<std::uint64_t> entities;
    for (const auto& [e, n] : entity_frames) entities.push_back(e);
    std::sort(entities.begin(), entities.end());
    std::vector<TrackId> tracks;
    for (const auto& [t, n] : track_frames) tracks.push_back(t);
    CostMatrix neg_overlap(entities.size(), tracks.size());
    for (std::size_t i = 0; i < entities.size(); ++i) {
        for (std::size_t j = 0; j < tracks.size(); ++j) {
            auto it = id_overlap.find({entities[i], tracks[j].value});
            neg_overlap(i, j) = it == id_overlap.end() ? 0.0 : -static_cast<double>(it->second);
        }
    }
    double idtp = 0.0;
    for (auto [i, j] : tracker::hungarian_assign(neg_overlap).matches) {
        idtp -= neg_overlap(i, j);
    }
    const double idfn = gt_count - idtp;
    const double idfp = static_cast<double>(total_hyp) - idtp;
    r.id_precision = idtp + idfp > 0.0 ? idtp / (idtp + idfp) : 0.0;
    r.id_recall = idtp + idfn > 0.0 ? idtp / (idtp + idfn) : 0.0;
    r.idf1 = 2.0 * idtp + idfp + idfn > 0.0 ? 2.0 * idtp / (2.0 * idtp + idfp + idfn) : 0.0;

    for (const auto& [t, n] : track_frames) {
        std::optional<std::uint64_t> owner;
        auto it = match_tally.find(t);
        if (it != match_tally.end()) {
            std::size_t total = 0;
            for (const auto& [e, k] : it->second) total += k;
            for (const auto& [e, k] : it->second) {
                if (2 * k >= total) {
                    owner = e;
                    break;
                }
            }
        }
        r.owners[t] = owner;
    }
    return r;
}

}  // namespace edgeidle::eval
