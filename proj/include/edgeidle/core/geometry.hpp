#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace edgeidle {

/// Axis-aligned box in continuous pixel coordinates, (x, y) is the top-left corner.
struct BBox {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    friend bool operator==(const BBox&, const BBox&) = default;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// True when w > 0, h > 0 and every field is finite.
bool is_valid(const BBox& b) noexcept;

/// Throws ValidationError naming `what` when `b` is not valid.
void require_valid(const BBox& b, std::string_view what);

double bbox_area(const BBox& b) noexcept;
Point bbox_centroid(const BBox& b) noexcept;

/// Intersection over union in [0, 1]. Boxes that only share an edge score 0.
double bbox_iou(const BBox& a, const BBox& b) noexcept;

BBox translated(const BBox& b, double dx, double dy) noexcept;

/// Clips `b` to [0, width] x [0, height]. The result may have zero extent.
BBox clipped(const BBox& b, double width, double height) noexcept;

/// Object class as emitted by the detector. Names resolve through ClassRegistry.
struct ClassLabel {
    int id = 0;

    friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

/// Maps class ids to names. Ids 0..2 are the built-in machinery classes;
/// custom labels are appended after them.
class ClassRegistry {
public:
    ClassRegistry();

    static const ClassRegistry& builtin();

    ClassLabel add(std::string name);
    std::string_view name(ClassLabel label) const;
    ClassLabel find(std::string_view name) const;
    bool contains(ClassLabel label) const noexcept;
    std::size_t size() const noexcept { return names_.size(); }

private:
    std::vector<std::string> names_;
};

inline constexpr ClassLabel kExcavator{0};
inline constexpr ClassLabel kDumpTruck{1};
inline constexpr ClassLabel kCementMixerTruck{2};

struct Detection {
    std::int64_t frame_index = 0;
    BBox bbox;
    double confidence = 0.0;
    ClassLabel label;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Stream-unique track identity; values start at 1 and are never reused.
struct TrackId {
    std::uint64_t value = 0;

    friend auto operator<=>(const TrackId&, const TrackId&) = default;
};

}  // namespace edgeidle

template <>
struct std::hash<edgeidle::TrackId> {
    std::size_t operator()(edgeidle::TrackId id) const noexcept {
        return std::hash<std::uint64_t>{}(id.value);
    }
};
