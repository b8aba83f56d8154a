#include "lmcx/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmcx {

void FootprintFiltration::validate() const {
    if (steps.empty()) throw std::invalid_argument("filtration must have at least one step");
    for (const auto& s : steps) {
        if (s.radius <= 0.0) throw std::invalid_argument("filtration footprint radius must be positive");
        if (s.half_angle <= 0.0 || s.half_angle > std::numbers::pi)
            throw std::invalid_argument("filtration half_angle must be in (0, pi]");
    }
    for (std::size_t t = 1; t < steps.size(); ++t) {
        const auto& prev = steps[t - 1];
        const auto& cur = steps[t];
        if (!cur.is_subset_of(prev) || cur == prev)
            throw std::invalid_argument("filtration must be strictly nested");
    }
}

FootprintFiltration make_geometric_filtration(const SensorFootprint& target,
                                              double initial_radius,
                                              double radius_shrink,
                                              double angle_shrink) {
    if (radius_shrink <= 0.0 || radius_shrink >= 1.0 || angle_shrink <= 0.0 || angle_shrink >= 1.0)
        throw std::invalid_argument("filtration shrink factors must lie in (0, 1)");

    // Disks keep half_angle = pi throughout; sector schedules start from a
    // half disk (or from the target angle when it is wider than pi/2).
    const double start_angle =
        target.is_disk() ? std::numbers::pi
                         : std::max(std::numbers::pi / 2.0, target.half_angle);
    const double start_radius = std::max(initial_radius, target.radius);

    FootprintFiltration filtration;
    double radius = start_radius;
    double angle = start_angle;
    while (true) {
        const SensorFootprint step{std::max(target.radius, radius),
                                   std::max(target.half_angle, angle)};
        if (filtration.steps.empty() || step != filtration.steps.back())
            filtration.steps.push_back(step);
        if (step == target) break;
        radius *= radius_shrink;
        angle *= angle_shrink;
    }
    filtration.validate();
    return filtration;
}

}  // namespace lmcx
