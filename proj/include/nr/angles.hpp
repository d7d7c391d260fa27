#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nr {

inline constexpr double kPi = std::numbers::pi;

// Wrap into [0, 2*pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

// Wrap a line angle (direction mod pi) into [0, pi).
inline double wrap_line_angle(double a) {
    a = std::fmod(a, kPi);
    if (a < 0.0) a += kPi;
    return a;
}

// Angular distance between two directions, folded to [0, pi].
inline double direction_distance(double a, double b) {
    return std::acos(std::clamp(std::cos(a - b), -1.0, 1.0));
}

// Axis of symmetry of a pair of directions: the bisector line (theta1+theta2)/2,
// well defined mod pi regardless of the 2*pi branch of either argument.
inline double symmetry_line(double theta1, double theta2) {
    return wrap_line_angle(0.5 * (theta1 + theta2));
}

// Opening angle between two lines whose outward normals point at angles b1, b2,
// measured on the side away from both normals. Parallel lines with opposite
// normals give 0, lines sharing a normal direction give pi.
inline double mutual_line_angle(double b1, double b2) {
    return kPi - direction_distance(b1, b2);
}

} // namespace nr
