#include "edgeidle/core/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "edgeidle/error.hpp"

namespace edgeidle {

bool is_valid(const BBox& b) noexcept {
    return std::isfinite(b.x) && std::isfinite(b.y) && std::isfinite(b.w) && std::isfinite(b.h) &&
           b.w > 0.0 && b.h > 0.0;
}

void require_valid(const BBox& b, std::string_view what) {
    if (!is_valid(b)) {
        throw ValidationError(std::string(what) + ": box must have finite fields and w, h > 0");
    }
}

double bbox_area(const BBox& b) noexcept { return b.w * b.h; }

Point bbox_centroid(const BBox& b) noexcept { return {b.x + b.w / 2.0, b.y + b.h / 2.0}; }

double bbox_iou(const BBox& a, const BBox& b) noexcept {
    const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
    const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
    if (ix <= 0.0 || iy <= 0.0) {
        return 0.0;
    }
    // Areas from corner extents, like the intersection, so iou(a, a) is exactly 1.
    const double area_a = ((a.x + a.w) - a.x) * ((a.y + a.h) - a.y);
    const double area_b = ((b.x + b.w) - b.x) * ((b.y + b.h) - b.y);
    const double inter = ix * iy;
    const double uni = area_a + area_b - inter;
    if (uni <= 0.0) {
        return 0.0;
    }
    return std::clamp(inter / uni, 0.0, 1.0);
}

BBox translated(const BBox& b, double dx, double dy) noexcept { return {b.x + dx, b.y + dy, b.w, b.h}; }

BBox clipped(const BBox& b, double width, double height) noexcept {
    const double x0 = std::clamp(b.x, 0.0, width);
    const double y0 = std::clamp(b.y, 0.0, height);
    const double x1 = std::clamp(b.x + b.w, 0.0, width);
    const double y1 = std::clamp(b.y + b.h, 0.0, height);
    return {x0, y0, std::max(0.0, x1 - x0), std::max(0.0, y1 - y0)};
}

ClassRegistry::ClassRegistry() : names_{"excavator", "dump_truck", "cement_mixer_truck"} {}

const ClassRegistry& ClassRegistry::builtin() {
    static const ClassRegistry registry;
    return registry;
}

ClassLabel ClassRegistry::add(std::string name) {
    if (name.empty()) {
        throw ValidationError("class name must be nonempty");
    }
    if (auto it = std::find(names_.begin(), names_.end(), name); it != names_.end()) {
        return ClassLabel{static_cast<int>(it - names_.begin())};
    }
    names_.push_back(std::move(name));
    return ClassLabel{static_cast<int>(names_.size() - 1)};
}

std::string_view ClassRegistry::name(ClassLabel label) const {
    if (!contains(label)) {
        throw ValidationError("unknown class id " + std::to_string(label.id));
    }
    return names_[static_cast<std::size_t>(label.id)];
}

ClassLabel ClassRegistry::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return ClassLabel{static_cast<int>(i)};
        }
    }
    throw ValidationError("unknown class name '" + std::string(name) + "'");
}

bool ClassRegistry::contains(ClassLabel label) const noexcept {
    return label.id >= 0 && static_cast<std::size_t>(label.id) < names_.size();
}

}  // namespace edgeidle
