#pragma once

#include <numbers>
#include <vector>

namespace lmcx {

// Sensing region in the robot frame: the closed sector
// { q : |q - x| <= radius, |bearing(q) - theta| <= half_angle }.
// A half_angle of pi makes it an omnidirectional disk.
struct SensorFootprint {
    double radius = 1.0;
    double half_angle = std::numbers::pi;

    bool is_disk() const { return half_angle >= std::numbers::pi; }

    // Membership test for a point at the given distance and bearing offset
    // (the wrapped angle between the robot heading and the direction to the
    // point). A coincident point (distance 0) is always inside.
    bool contains(double distance, double bearing_offset) const {
        if (distance > radius) return false;
        if (distance == 0.0) return true;
        return std::abs(bearing_offset) <= half_angle;
    }

    // S is a subset of T iff it is no larger in either extent.
    bool is_subset_of(const SensorFootprint& other) const {
        return radius <= other.radius && half_angle <= other.half_angle;
    }

    bool operator==(const SensorFootprint&) const = default;
};

// Nested shrinking footprint sequence S^1 > S^2 > ... > S^s; the last element
// is the robots' true footprint.
struct FootprintFiltration {
    std::vector<SensorFootprint> steps;

    void validate() const;  // throws std::invalid_argument on violations
};

// Geometric shrink schedule from a large initial footprint down to the true
// one. Sector sensors start from a half disk; disks stay disks. The final
// step equals `target` exactly.
FootprintFiltration make_geometric_filtration(const SensorFootprint& target,
                                              double initial_radius,
                                              double radius_shrink = 0.6,
                                              double angle_shrink = 0.75);

}  // namespace lmcx
