#include "edgeidle/idle/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeidle/error.hpp"

namespace edgeidle::idle {
namespace {

void require_window(std::size_t n, const char* what) {
    if (n < 2) {
        throw InsufficientWindowError(std::string(what) + ": need at least 2 observations, got " +
                                      std::to_string(n));
    }
}

double median_in_place(std::vector<double>& v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return lower + (upper - lower) / 2.0;
}

}  // namespace

std::vector<double> area_differences(std::span<const double> areas) {
    require_window(areas.size(), "area_differences");
    std::vector<double> out(areas.size() - 1);
    for (std::size_t i = 0; i + 1 < areas.size(); ++i) {
        out[i] = std::abs(areas[i] - areas[i + 1]);
    }
    return out;
}

std::vector<double> centroid_differences(std::span<const Point> centroids) {
    require_window(centroids.size(), "centroid_differences");
    std::vector<double> out(centroids.size() - 1);
    for (std::size_t i = 0; i + 1 < centroids.size(); ++i) {
        const double dx = centroids[i + 1].x - centroids[i].x;
        const double dy = centroids[i + 1].y - centroids[i].y;
        out[i] = std::sqrt(dx * dx + dy * dy);
    }
    return out;
}

double median(std::span<const double> series) {
    if (series.empty()) {
        throw InsufficientWindowError("median: empty series");
    }
    std::vector<double> scratch(series.begin(), series.end());
    return median_in_place(scratch);
}

double mad(std::span<const double> series, MadVariant variant) {
    if (series.empty()) {
        throw InsufficientWindowError("mad: empty series");
    }
    const double center = median(series);
    if (variant == MadVariant::MedianOfDeviations) {
        std::vector<double> dev(series.size());
        std::transform(series.begin(), series.end(), dev.begin(),
                       [center](double d) { return std::abs(d - center); });
        return median_in_place(dev);
    }
    double sum = 0.0;
    for (double d : series) {
        sum += std::abs(d - center);
    }
    return sum / static_cast<double>(series.size());
}

WindowFeatures window_features(std::span<const double> areas, std::span<const Point> centroids,
                               MadVariant variant) {
    if (areas.size() != centroids.size()) {
        throw ValidationError("window_features: area and centroid series differ in length");
    }
    const std::vector<double> ad = area_differences(areas);
    const std::vector<double> cd = centroid_differences(centroids);
    return {mad(ad, variant), mad(cd, variant), areas.size()};
}

WindowFeatures window_features(std::span<const BBox> boxes, MadVariant variant) {
    std::vector<double> areas;
    std::vector<Point> centroids;
    areas.reserve(boxes.size());
    centroids.reserve(boxes.size());
    for (const BBox& b : boxes) {
        areas.push_back(bbox_area(b));
        centroids.push_back(bbox_centroid(b));
    }
    return window_features(areas, centroids, variant);
}

}  // namespace edgeidle::idle
