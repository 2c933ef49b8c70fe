#include "geodtn/geometry.h"

#include <algorithm>
#include <cmath>

#include "geodtn/errors.h"

namespace geodtn {

RelativeAngle relative_angle(const Position& pos, const Velocity& vel, const Position& dest) {
    const double speed = vel.magnitude();
    if (speed == 0.0) throw ZeroSpeedError{};
    const double bx = dest.x - pos.x;
    const double by = dest.y - pos.y;
    const double bearing_len = std::hypot(bx, by);
    if (bearing_len == 0.0) throw CoincidentDestinationError{};
    double dot = (vel.dx / speed) * (bx / bearing_len) + (vel.dy / speed) * (by / bearing_len);
    dot = std::clamp(dot, -1.0, 1.0);
    return RelativeAngle{std::acos(dot), dot};
}

double intersect_time(double dist, double range, double speed, const RelativeAngle& phi) {
    if (phi.cos_phi <= 0.0) throw InvalidHeadingError{};
    if (dist <= range) throw AlreadyInRangeError{};
    return (dist - range) / (speed * phi.cos_phi);
}

double projected_distance(double dist, double window, double speed, const RelativeAngle& phi,
                          double range) {
    return dist - window * phi.cos_phi * speed - range;
}

}  // namespace geodtn
