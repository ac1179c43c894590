#pragma once

#include <span>
#include <vector>

#include "edgeidle/core/geometry.hpp"

namespace edgeidle::idle {

enum class MadVariant {
    AsPrinted,           // mean of |D_i - median(D)|
    MedianOfDeviations,  // median of |D_i - median(D)|
};

/// |A_i - A_{i+1}| for consecutive entries. Needs at least two areas.
std::vector<double> area_differences(std::span<const double> areas);

/// Euclidean distance between consecutive centroids. Needs at least two points.
std::vector<double> centroid_differences(std::span<const Point> centroids);

double median(std::span<const double> series);

/// Spread of `series` about its median; empty input throws InsufficientWindowError.
double mad(std::span<const double> series, MadVariant variant = MadVariant::AsPrinted);

struct WindowFeatures {
    double mad_ad = 0.0;  // px^2
    double mad_cd = 0.0;  // px
    std::size_t n = 0;    // observations in the window

    friend bool operator==(const WindowFeatures&, const WindowFeatures&) = default;
};

WindowFeatures window_features(std::span<const double> areas, std::span<const Point> centroids,
                               MadVariant variant = MadVariant::AsPrinted);

/// Convenience overload computing area and centroid series from boxes.
WindowFeatures window_features(std::span<const BBox> boxes, MadVariant variant = MadVariant::AsPrinted);

}  // namespace edgeidle::idle
