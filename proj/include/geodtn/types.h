#pragma once

#include <cmath>
#include <cstdint>

namespace geodtn {

using NodeId = int32_t;
using MessageId = uint64_t;

struct Position {
    double x = 0.0;
    double y = 0.0;
};

struct Velocity {
    double dx = 0.0;
    double dy = 0.0;

    double magnitude() const { return std::hypot(dx, dy); }
    bool is_zero() const { return dx == 0.0 && dy == 0.0; }
};

// Angle between a node's heading and the bearing to a destination.
// cos_phi is the clamped normalized dot product; phi = acos(cos_phi).
// Carrying the cosine avoids an acos/cos round trip in the relay metrics,
// so phi == pi/2 cases (cos_phi == 0) stay exact.
struct RelativeAngle {
    double phi = 0.0;
    double cos_phi = 1.0;

    static RelativeAngle from_radians(double radians) {
        return RelativeAngle{radians, std::cos(radians)};
    }

    bool heading_toward() const { return cos_phi > 0.0; }  // phi < pi/2
};

struct SpeedRange {
    double min = 0.0;
    double max = 0.0;
};

struct WaitRange {
    double min = 0.0;
    double max = 0.0;
};

struct Bounds {
    double width = 0.0;
    double height = 0.0;
};

inline double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace geodtn
