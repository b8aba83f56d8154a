#pragma once

#include <cmath>
#include <numbers>

namespace lmcx {

// Planar pose (x, y in meters, theta in radians).
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
};

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a + std::numbers::pi, two_pi);
    if (a <= 0.0) a += two_pi;
    return a - std::numbers::pi;
}

}  // namespace lmcx
