#include "geodtn/mobility.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "geodtn/errors.h"

namespace geodtn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

void MapGraph::validate() const {
    const int n = static_cast<int>(coordinates.size());
    if (n == 0) throw ConfigError("map has no coordinates");
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            throw ConfigError("map edge references a missing coordinate index");
        }
        if (a == b) throw ConfigError("map edge joins a coordinate to itself");
        if (distance(coordinates[a], coordinates[b]) <= 0.0) {
            throw ConfigError("map edge has zero length");
        }
    }
    for (const auto& [group, pois] : poi_groups) {
        if (pois.empty()) throw ConfigError("empty POI group " + std::to_string(group));
        for (int idx : pois) {
            if (idx < 0 || idx >= n) {
                throw ConfigError("POI tag references a missing coordinate index");
            }
        }
    }
    // connectivity
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != n) throw ConfigError("map graph is disconnected");
}

std::vector<int> MapGraph::all_pois() const {
    std::vector<int> out;
    for (const auto& [group, pois] : poi_groups) {
        out.insert(out.end(), pois.begin(), pois.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MapGraph load_map(std::istream& in) {
    MapGraph map;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto fail = [&](const std::string& what) {
            throw ParseError("map line " + std::to_string(lineno) + ": " + what);
        };
        if (tag == "V") {
            double x, y;
            if (!(ls >> x >> y)) fail("expected V x y");
            map.coordinates.push_back({x, y});
        } else if (tag == "E") {
            int a, b;
            if (!(ls >> a >> b)) fail("expected E i j");
            map.edges.emplace_back(a, b);
        } else if (tag == "P") {
            int group, idx;
            if (!(ls >> group >> idx)) fail("expected P group i");
            map.poi_groups[group].push_back(idx);
        } else {
            fail("unknown record '" + tag + "'");
        }
    }
    map.validate();
    return map;
}

MapGraph load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file: " + path);
    return load_map(in);
}

void save_map(const MapGraph& map, std::ostream& out) {
    for (const auto& c : map.coordinates) out << "V " << c.x << " " << c.y << "\n";
    for (const auto& [a, b] : map.edges) out << "E " << a << " " << b << "\n";
    for (const auto& [group, pois] : map.poi_groups) {
        for (int idx : pois) out << "P " << group << " " << idx << "\n";
    }
}

MapGraph make_grid_map(int cols, int rows, double spacing, int poi_block) {
    if (cols < 2 || rows < 2) throw ConfigError("grid map needs at least 2x2 coordinates");
    if (spacing <= 0.0) throw ConfigError("grid spacing must be positive");
    if (poi_block < 1 || poi_block > cols || poi_block > rows) {
        throw ConfigError("POI block does not fit the grid");
    }
    MapGraph map;
    map.coordinates.reserve(static_cast<size_t>(cols) * rows);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            map.coordinates.push_back({c * spacing, r * spacing});
        }
    }
    auto at = [cols](int c, int r) { return r * cols + c; };
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) map.edges.emplace_back(at(c, r), at(c + 1, r));
            if (r + 1 < rows) map.edges.emplace_back(at(c, r), at(c, r + 1));
        }
    }
    // one interest area per corner
    const std::pair<int, int> corners[4] = {
        {0, 0}, {cols - poi_block, 0}, {0, rows - poi_block}, {cols - poi_block, rows - poi_block}};
    for (int g = 0; g < 4; ++g) {
        auto [c0, r0] = corners[g];
        for (int r = r0; r < r0 + poi_block; ++r) {
            for (int c = c0; c < c0 + poi_block; ++c) {
                map.poi_groups[g].push_back(at(c, r));
            }
        }
    }
    map.validate();
    return map;
}

ShortestPaths::ShortestPaths(const MapGraph& map) : n_(map.coordinates.size()) {
    dist_.assign(n_ * n_, kInf);
    next_.assign(n_ * n_, -1);
    std::vector<std::vector<std::pair<int, double>>> adj(n_);
    for (const auto& [a, b] : map.edges) {
        const double len = distance(map.coordinates[a], map.coordinates[b]);
        adj[a].emplace_back(b, len);
        adj[b].emplace_back(a, len);
    }
    // O(V^2) Dijkstra per source; maps are small and this runs once per run.
    std::vector<double> d(n_);
    std::vector<bool> done(n_);
    std::vector<int> first_hop(n_);
    for (size_t src = 0; src < n_; ++src) {
        std::fill(d.begin(), d.end(), kInf);
        std::fill(done.begin(), done.end(), false);
        std::fill(first_hop.begin(), first_hop.end(), -1);
        d[src] = 0.0;
        first_hop[src] = static_cast<int>(src);
        for (size_t iter = 0; iter < n_; ++iter) {
            int best = -1;
            for (size_t v = 0; v < n_; ++v) {
                if (!done[v] && d[v] < kInf && (best < 0 || d[v] < d[best])) {
                    best = static_cast<int>(v);
                }
            }
            if (best < 0) break;
            done[best] = true;
            for (const auto& [w, len] : adj[best]) {
                if (d[best] + len < d[w]) {
                    d[w] = d[best] + len;
                    first_hop[w] = best == static_cast<int>(src) ? w : first_hop[best];
                }
            }
        }
        for (size_t v = 0; v < n_; ++v) {
            dist_[idx(static_cast<int>(src), static_cast<int>(v))] = d[v];
            next_[idx(static_cast<int>(src), static_cast<int>(v))] = first_hop[v];
        }
    }
}

std::vector<int> ShortestPaths::path(int from, int to) const {
    if (dist(from, to) == kInf) {
        throw UnreachableWaypointError("no path between map coordinates " +
                                       std::to_string(from) + " and " + std::to_string(to));
    }
    std::vector<int> out{from};
    int cur = from;
    while (cur != to) {
        cur = next_[idx(cur, to)];
        out.push_back(cur);
    }
    return out;
}

int pick_poi_waypoint(const MapGraph& map, const PoiProfile& profile, Rng& rng) {
    if (rng.uniform01() < profile.interest) {
        return profile.poi_coordinates[rng.uniform_index(profile.poi_coordinates.size())];
    }
    return static_cast<int>(rng.uniform_index(map.coordinates.size()));
}

namespace {

double draw_speed(const SpeedRange& speed, Rng& rng) {
    return speed.min == speed.max ? speed.min : rng.uniform(speed.min, speed.max);
}

double draw_wait(const WaitRange& wait, Rng& rng) {
    return wait.min == wait.max ? wait.min : rng.uniform(wait.min, wait.max);
}

void aim_at(MobilityState& state, const Position& target) {
    const double d = distance(state.pos, target);
    state.vel = d > 0.0
                    ? Velocity{state.speed * (target.x - state.pos.x) / d,
                               state.speed * (target.y - state.pos.y) / d}
                    : Velocity{};
}

void start_rwp_trip(MobilityState& state, const Bounds& bounds, const SpeedRange& speed,
                    Rng& rng) {
    state.waypoint = {rng.uniform(0.0, bounds.width), rng.uniform(0.0, bounds.height)};
    state.speed = draw_speed(speed, rng);
    state.route = {state.waypoint};
    state.route_idx = 0;
    state.mode = MobilityState::Mode::Moving;
    state.at_vertex = -1;
    aim_at(state, state.waypoint);
}

// Builds the leg list to `target` from the current location (a vertex, or a
// point between two vertices right after placement).
void start_map_trip(MobilityState& state, const MapGraph& map, const ShortestPaths& paths,
                    int target, int edge_a, int edge_b, const SpeedRange& speed, Rng& rng) {
    std::vector<int> vertex_path;
    if (state.at_vertex >= 0) {
        vertex_path = paths.path(state.at_vertex, target);
    } else {
        const double via_a = distance(state.pos, map.coordinates[edge_a]) + paths.dist(edge_a, target);
        const double via_b = distance(state.pos, map.coordinates[edge_b]) + paths.dist(edge_b, target);
        vertex_path = paths.path(via_a <= via_b ? edge_a : edge_b, target);
    }
    state.route.clear();
    for (int v : vertex_path) state.route.push_back(map.coordinates[v]);
    state.route_idx = 0;
    state.waypoint = map.coordinates[target];
    state.speed = draw_speed(speed, rng);
    state.at_vertex = -1;
    state.mode = MobilityState::Mode::Moving;
    aim_at(state, state.route.front());
}

enum class Arrival { KeepGoing, TripDone };

// Moves along the remaining legs consuming up to `travel` meters.
Arrival advance_route(MobilityState& state, double travel) {
    while (travel > 0.0 && state.route_idx < state.route.size()) {
        const Position& leg = state.route[state.route_idx];
        const double d = distance(state.pos, leg);
        if (travel < d) {
            state.pos.x += (leg.x - state.pos.x) / d * travel;
            state.pos.y += (leg.y - state.pos.y) / d * travel;
            aim_at(state, leg);
            return Arrival::KeepGoing;
        }
        state.pos = leg;
        travel -= d;
        ++state.route_idx;
    }
    return state.route_idx >= state.route.size() ? Arrival::TripDone : Arrival::KeepGoing;
}

void become_idle(MobilityState& state, double wait) {
    state.mode = MobilityState::Mode::Waiting;
    state.vel = Velocity{};
    state.wait_remaining = wait;
}

}  // namespace

void rwp_step(MobilityState& state, double dt, const Bounds& bounds, const SpeedRange& speed,
              const WaitRange& wait, Rng& rng) {
    if (state.mode == MobilityState::Mode::Waiting) {
        state.wait_remaining -= dt;
        if (state.wait_remaining <= 0.0) start_rwp_trip(state, bounds, speed, rng);
        return;
    }
    if (advance_route(state, state.speed * dt) == Arrival::TripDone) {
        const double w = draw_wait(wait, rng);
        if (w > 0.0) {
            become_idle(state, w);
        } else {
            start_rwp_trip(state, bounds, speed, rng);
        }
    }
}

namespace {

int vertex_at(const MapGraph& map, const Position& pos) {
    for (size_t i = 0; i < map.coordinates.size(); ++i) {
        if (map.coordinates[i].x == pos.x && map.coordinates[i].y == pos.y) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

void select_map_target(MobilityState& state, const MapGraph& map, const ShortestPaths& paths,
                       const PoiProfile& profile, const SpeedRange& speed, Rng& rng) {
    const int target = pick_poi_waypoint(map, profile, rng);
    if (state.at_vertex == target) {
        // zero-length trip: idle this slot, re-draw next step
        become_idle(state, 0.0);
        return;
    }
    start_map_trip(state, map, paths, target, 0, 0, speed, rng);
}

}  // namespace

void poi_step(MobilityState& state, double dt, const MapGraph& map, const ShortestPaths& paths,
              const PoiProfile& profile, const SpeedRange& speed, const WaitRange& wait,
              Rng& rng) {
    if (state.mode == MobilityState::Mode::Waiting) {
        state.wait_remaining -= dt;
        if (state.wait_remaining <= 0.0) select_map_target(state, map, paths, profile, speed, rng);
        return;
    }
    if (advance_route(state, state.speed * dt) == Arrival::TripDone) {
        state.at_vertex = vertex_at(map, state.pos);
        const double w = draw_wait(wait, rng);
        if (w > 0.0) {
            become_idle(state, w);
        } else {
            select_map_target(state, map, paths, profile, speed, rng);
        }
    }
}

MobilityState rwp_initial_state(const Bounds& bounds, const SpeedRange& speed, Rng& rng) {
    MobilityState state;
    state.pos = {rng.uniform(0.0, bounds.width), rng.uniform(0.0, bounds.height)};
    start_rwp_trip(state, bounds, speed, rng);
    return state;
}

MobilityState poi_initial_state(const MapGraph& map, const ShortestPaths& paths,
                                const PoiProfile& profile, const SpeedRange& speed, Rng& rng) {
    MobilityState state;
    // anywhere along a uniformly chosen path segment
    const auto& [a, b] = map.edges[rng.uniform_index(map.edges.size())];
    const double t = rng.uniform01();
    const Position& pa = map.coordinates[a];
    const Position& pb = map.coordinates[b];
    state.pos = {pa.x + (pb.x - pa.x) * t, pa.y + (pb.y - pa.y) * t};
    state.at_vertex = vertex_at(map, state.pos);
    const int target = pick_poi_waypoint(map, profile, rng);
    if (state.at_vertex == target) {
        become_idle(state, 0.0);
    } else {
        start_map_trip(state, map, paths, target, a, b, speed, rng);
    }
    return state;
}

std::vector<Position> place_destinations(const MapGraph& map, int count, double variation,
                                         Rng& rng) {
    std::vector<int> pois = map.all_pois();
    if (count < 0 || static_cast<size_t>(count) > pois.size()) {
        throw ConfigError("destination count exceeds the number of POIs");
    }
    rng.shuffle(pois);
    std::vector<Position> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const Position& poi = map.coordinates[pois[k]];
        if (variation == 0.0) {
            out.push_back(poi);
            continue;
        }
        const double theta = rng.uniform(0.0, 2.0 * M_PI);
        const Position displaced{poi.x + variation * std::cos(theta),
                                 poi.y + variation * std::sin(theta)};
        int best = -1;
        double best_d = kInf;
        for (size_t i = 0; i < map.coordinates.size(); ++i) {
            if (distance(map.coordinates[i], poi) <= variation) continue;
            const double d = distance(map.coordinates[i], displaced);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) {
            throw NoFeasibleCoordinateError(
                "no map coordinate lies farther than the variation from the POI");
        }
        out.push_back(map.coordinates[best]);
    }
    return out;
}

}  // namespace geodtn
