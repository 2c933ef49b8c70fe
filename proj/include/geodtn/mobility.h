#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "geodtn/rng.h"
#include "geodtn/types.h"

namespace geodtn {

// Road-style graph: coordinates joined by bidirectional path segments.
// Nodes travel along edges; POI tags group coordinates into interest areas.
struct MapGraph {
    std::vector<Position> coordinates;
    std::vector<std::pair<int, int>> edges;
    std::map<int, std::vector<int>> poi_groups;  // group id -> coordinate indices

    // Throws ConfigError on dangling indices, zero-length or degenerate
    // edges, empty POI groups, or a disconnected graph.
    void validate() const;

    std::vector<int> all_pois() const;
};

MapGraph load_map(std::istream& in);
MapGraph load_map_file(const std::string& path);
void save_map(const MapGraph& map, std::ostream& out);

// Synthetic default: cols x rows grid with `spacing` meters between
// neighbors and four block x block POI clusters, one per corner area
// (groups 0..3).
MapGraph make_grid_map(int cols, int rows, double spacing, int poi_block = 2);

// All-pairs shortest paths over the map, precomputed once per scenario.
class ShortestPaths {
public:
    explicit ShortestPaths(const MapGraph& map);

    double dist(int from, int to) const { return dist_[idx(from, to)]; }
    // Vertex sequence from -> to, inclusive of both endpoints.
    std::vector<int> path(int from, int to) const;

private:
    size_t idx(int from, int to) const { return static_cast<size_t>(from) * n_ + to; }
    size_t n_;
    std::vector<double> dist_;
    std::vector<int> next_;  // next hop on the shortest path, -1 if none
};

struct PoiProfile {
    int group_id = 0;
    std::vector<int> poi_coordinates;  // indices into MapGraph::coordinates
    double interest = 0.0;             // probability the next waypoint is a POI
};

struct MobilityState {
    Position pos;
    Velocity vel;
    enum class Mode { Moving, Waiting } mode = Mode::Waiting;
    double wait_remaining = 0.0;
    Position waypoint;          // final target of the current trip
    double speed = 0.0;         // trip speed, constant between waypoints
    int at_vertex = -1;         // map vertex index when parked on one
    std::vector<Position> route;  // remaining leg targets, route_idx first
    size_t route_idx = 0;
};

// Random-waypoint step over an open rectangle: advance toward the waypoint,
// on arrival wait a uniform draw from wait_range, then pick a fresh uniform
// waypoint and speed.
void rwp_step(MobilityState& state, double dt, const Bounds& bounds, const SpeedRange& speed,
              const WaitRange& wait, Rng& rng);

// Map walk: next waypoint is a POI with probability profile.interest, else
// any map coordinate; travel follows the map's shortest path. Throws
// UnreachableWaypointError when the chosen coordinate cannot be reached
// (disconnected graph).
void poi_step(MobilityState& state, double dt, const MapGraph& map, const ShortestPaths& paths,
              const PoiProfile& profile, const SpeedRange& speed, const WaitRange& wait,
              Rng& rng);

// Waypoint draw used by poi_step, exposed for distribution tests.
int pick_poi_waypoint(const MapGraph& map, const PoiProfile& profile, Rng& rng);

// Fresh states for simulation start. RWP nodes get a uniform position in
// bounds and start a trip; map nodes start anywhere along a uniform edge.
MobilityState rwp_initial_state(const Bounds& bounds, const SpeedRange& speed, Rng& rng);
MobilityState poi_initial_state(const MapGraph& map, const ShortestPaths& paths,
                                const PoiProfile& profile, const SpeedRange& speed, Rng& rng);

// For each of `count` POIs picked at random: the map coordinate nearest to a
// point displaced `variation` meters from the POI, constrained to lie more
// than `variation` from it. variation == 0 returns the POIs themselves.
// Throws NoFeasibleCoordinateError when no coordinate satisfies the
// constraint.
std::vector<Position> place_destinations(const MapGraph& map, int count, double variation,
                                         Rng& rng);

}  // namespace geodtn
