#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geodtn/events.h"
#include "geodtn/metrics.h"
#include "geodtn/routing.h"
#include "geodtn/types.h"

namespace geodtn {

enum class MobilityKind { Rwp, PoiMap };
enum class GenerationMode { NetworkWide, PerNode };

struct GridSpec {
    int cols = 8;
    int rows = 6;
    double spacing = 150.0;
    int poi_block = 2;
};

struct GroupSpec {
    int group_id = 0;
    int count = 0;
    double interest = 0.0;
};

// How many destinations to draw near POIs and how far to displace them.
struct DestinationSpec {
    int count = 0;
    double variation = 0.0;
};

struct ScenarioConfig {
    MobilityKind mobility = MobilityKind::Rwp;

    // rwp scenario
    Bounds area{1000.0, 1000.0};
    int node_count = 50;

    // map scenario: one map source plus node groups
    std::optional<std::string> map_file;
    std::optional<GridSpec> map_grid;
    std::vector<GroupSpec> groups;

    // destinations: explicit positions and/or a POI-derived draw
    std::vector<Position> destinations;
    std::optional<DestinationSpec> destination_spec;

    SpeedRange speed{5.0, 5.0};
    WaitRange wait{0.0, 0.0};
    double range = 10.0;
    double bandwidth = 2e6;  // bits per second
    double slot = 1.0;
    int copies = 8;  // L
    double ttl = 1200.0;
    uint64_t message_size = 1024;
    double generation_interval = 30.0;
    GenerationMode generation_mode = GenerationMode::NetworkWide;
    double warmup = 0.0;
    double generation_end = 6000.0;
    double drain = 3600.0;
    uint64_t buffer_capacity = 40ull << 20;
    SchemeId scheme = SchemeId::TBGR;
    double window = 5.0;  // W
    uint64_t seed = 1;
    bool check_invariants = true;

    int mobile_count() const;
    void validate() const;  // throws ConfigError naming the violated invariant
};

struct RunResult {
    EventLog log;
    RunMetrics metrics;
};

// Simulates the scenario to completion. Pure in (config, seed): identical
// inputs give byte-identical logs.
RunResult run(const ScenarioConfig& config);

}  // namespace geodtn
