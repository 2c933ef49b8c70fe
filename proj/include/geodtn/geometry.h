#pragma once

#include "geodtn/types.h"

namespace geodtn {

// Angle between `vel` and the bearing from `pos` to `dest`, in [0, pi].
// Throws ZeroSpeedError / CoincidentDestinationError on degenerate input.
RelativeAngle relative_angle(const Position& pos, const Velocity& vel, const Position& dest);

// Heuristic time for a node to enter the destination's transmission range:
// (dist - range) / (speed * cos phi). Only defined while the node heads
// toward the destination (phi < pi/2) and is still outside the range.
double intersect_time(double dist, double range, double speed, const RelativeAngle& phi);

// Distance from the destination to the node's extrapolated location after
// `window` seconds, minus the transmission range:
//   dist - window * cos(phi) * speed - range
// Total over all inputs; grows past dist - range when the node drifts away.
double projected_distance(double dist, double window, double speed, const RelativeAngle& phi,
                          double range);

}  // namespace geodtn
