#include <sstream>
#include <string>

#include "doctest.h"
#include "geodtn/config.h"
#include "geodtn/errors.h"

using namespace geodtn;

namespace {

const std::string kPresets = GEODTN_PRESET_DIR;

ScenarioConfig from_text(const std::string& text) {
    std::istringstream in(text);
    return load_config(in);
}

}  // namespace

TEST_CASE("the shipped presets load") {
    const ScenarioConfig rwp = load_config_file(kPresets + "/rwp-small.conf");
    CHECK(rwp.mobility == MobilityKind::Rwp);
    CHECK(rwp.node_count == 50);
    CHECK(rwp.range == 10.0);
    CHECK(rwp.speed.min == 5.0);
    CHECK(rwp.speed.max == 5.0);
    CHECK(rwp.copies == 8);
    CHECK(rwp.ttl == 1200.0);
    CHECK(rwp.generation_end == 6000.0);
    REQUIRE(rwp.destinations.size() == 1);
    CHECK(rwp.destinations[0].x == 250.0);

    const ScenarioConfig poi = load_config_file(kPresets + "/poi-grid.conf");
    CHECK(poi.mobility == MobilityKind::PoiMap);
    REQUIRE(poi.map_grid.has_value());
    CHECK(poi.map_grid->cols == 8);
    CHECK(poi.map_grid->rows == 6);
    CHECK(poi.groups.size() == 4);
    REQUIRE(poi.destination_spec.has_value());
    CHECK(poi.destination_spec->count == 4);

    CHECK_NOTHROW(load_config_file(kPresets + "/poi-robust.conf"));
    CHECK_NOTHROW(load_config_file(kPresets + "/emt-probe.conf"));
}

TEST_CASE("value forms: single-token speed and wait expand to ranges") {
    const ScenarioConfig c = from_text(
        "mobility = rwp\n"
        "nodes = 4\n"
        "destination = 10 10\n"
        "speed = 3 7\n"
        "wait = 240\n");
    CHECK(c.speed.min == 3.0);
    CHECK(c.speed.max == 7.0);
    CHECK(c.wait.min == 0.0);
    CHECK(c.wait.max == 240.0);
}

TEST_CASE("comments, blank lines and repeated destinations") {
    const ScenarioConfig c = from_text(
        "# a field with two sinks\n"
        "nodes = 6\n"
        "\n"
        "destination = 1 2   # east\n"
        "destination = 3 4\n");
    REQUIRE(c.destinations.size() == 2);
    CHECK(c.destinations[1].y == 4.0);
}

TEST_CASE("parse errors name the offending line and key") {
    CHECK_THROWS_WITH_AS(from_text("nodes = 5\nspeedd = 3\ndestination = 1 1\n"),
                         doctest::Contains("unknown key 'speedd'"), ParseError);
    CHECK_THROWS_WITH_AS(from_text("nodes = 5\nnodes = 6\ndestination = 1 1\n"),
                         doctest::Contains("line 2: duplicate key 'nodes'"), ParseError);
    CHECK_THROWS_AS(from_text("nodes\n"), ParseError);
    CHECK_THROWS_AS(from_text("nodes = five\ndestination = 1 1\n"), ParseError);
    CHECK_THROWS_AS(from_text("area = 100\nnodes = 5\ndestination = 1 1\n"), ParseError);
    CHECK_THROWS_AS(from_text("scheme = speedy\ndestination = 1 1\n"), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/x.conf"), ParseError);
}

TEST_CASE("semantic validation rejects bad scenarios") {
    CHECK_THROWS_AS(from_text("nodes = 5\n"), ConfigError);  // no destination
    CHECK_THROWS_AS(from_text("nodes = 5\ndestination = 1 1\nttl = -3\n"), ConfigError);
    CHECK_THROWS_AS(from_text("nodes = 5\ndestination = 1 1\nspeed = 0\n"), ConfigError);
    CHECK_THROWS_AS(from_text("nodes = 5\ndestination = 1 1\ngroup = 0 5 0.5\n"), ConfigError);
    CHECK_THROWS_AS(
        from_text("nodes = 5\ndestination = 1 1\nwarmup = 100\ngeneration_end = 50\n"),
        ConfigError);
}

TEST_CASE("sweep specs parse with defaults from the base") {
    std::istringstream in(
        "nodes = 8\n"
        "destination = 50 50\n"
        "area = 100 100\n"
        "seed = 9\n"
        "scheme = b-saw\n"
        "sweep_parameter = ttl\n"
        "sweep_values = 300, 600, 900\n");
    const SweepSpec spec = load_sweep(in);
    CHECK(spec.parameter == "ttl");
    REQUIRE(spec.values.size() == 3);
    CHECK(spec.values[1] == std::vector<std::string>{"600"});
    REQUIRE(spec.seeds.size() == 1);
    CHECK(spec.seeds[0] == 9);  // inherited from the base config
    REQUIRE(spec.schemes.size() == 1);
    CHECK(spec.schemes[0] == SchemeId::B_SAW);
}

TEST_CASE("the shipped demo sweep loads fully specified") {
    const SweepSpec spec = load_sweep_file(kPresets + "/demo-sweep.conf");
    CHECK(spec.parameter == "ttl");
    CHECK(spec.values.size() == 2);
    CHECK(spec.seeds == std::vector<uint64_t>{1, 2, 3});
    CHECK(spec.schemes == std::vector<SchemeId>{SchemeId::DD, SchemeId::S_SAW});
}

TEST_CASE("multi-token sweep values group on commas") {
    std::istringstream in(
        "mobility = poi-map\n"
        "map_grid = 6 5 100 2\n"
        "group = 0 8 0.5\n"
        "destinations = 3 0\n"
        "sweep_parameter = destinations\n"
        "sweep_values = 3 0, 3 500, 7 0, 7 500\n"
        "seeds = 1 2 3 4 5\n");
    const SweepSpec spec = load_sweep(in);
    REQUIRE(spec.values.size() == 4);
    CHECK(spec.values[0] == std::vector<std::string>{"3", "0"});
    CHECK(spec.values[3] == std::vector<std::string>{"7", "500"});
}

TEST_CASE("override rejects repeatable and specially-swept keys") {
    const ScenarioConfig base = from_text("nodes = 5\ndestination = 1 1\n");
    CHECK_NOTHROW(apply_override(base, "ttl", {"500"}));
    CHECK_THROWS_AS(apply_override(base, "destination", {"2", "2"}), ParseError);
    CHECK_THROWS_WITH_AS(apply_override(base, "seed", {"4"}),
                         doctest::Contains("swept through seeds"), ParseError);
    CHECK_THROWS_AS(apply_override(base, "scheme", {"dd"}), ParseError);
    // the override must still produce a valid scenario
    CHECK_THROWS_AS(apply_override(base, "ttl", {"-5"}), ConfigError);
}

TEST_CASE("sweep validation catches broken value points early") {
    std::istringstream in(
        "nodes = 8\n"
        "destination = 50 50\n"
        "sweep_parameter = ttl\n"
        "sweep_values = 300, oops\n");
    CHECK_THROWS_AS(load_sweep(in), ParseError);
}
