#include <map>
#include <sstream>

#include "doctest.h"
#include "geodtn/engine.h"
#include "geodtn/metrics.h"

using namespace geodtn;

namespace {

ScenarioConfig small_config() {
    ScenarioConfig c;
    c.mobility = MobilityKind::Rwp;
    c.area = {1000.0, 1000.0};
    c.node_count = 12;
    c.destinations = {{900.0, 900.0}};
    c.speed = {5.0, 5.0};
    c.range = 50.0;
    c.copies = 8;
    c.ttl = 300.0;
    c.generation_interval = 20.0;
    c.generation_end = 300.0;
    c.drain = 400.0;
    c.scheme = SchemeId::TBHGR;
    c.seed = 99;
    return c;
}

// Ticket conservation recomputed from the log alone: every ticket minted by a
// Created (or budget-exceeding Replicated) event must be retired exactly once
// by a Delivered/Expired/Evicted/Acked event, and never go negative en route.
void verify_conservation(const EventLog& log) {
    std::map<MessageId, long> live;
    for (const Event& e : log.events()) {
        switch (e.kind) {
            case Event::Kind::Created:
                live[e.msg] += e.tickets;
                break;
            case Event::Kind::Replicated:
                if (e.extra) live[e.msg] += e.tickets;
                break;
            case Event::Kind::Forwarded:
                break;
            case Event::Kind::Delivered:
            case Event::Kind::Expired:
            case Event::Kind::Evicted:
            case Event::Kind::Acked:
                live[e.msg] -= e.tickets;
                break;
        }
        REQUIRE(live[e.msg] >= 0);
    }
    for (const auto& [msg, remaining] : live) {
        INFO("message ", msg);
        CHECK(remaining == 0);
    }
}

}  // namespace

TEST_CASE("identical configs produce byte-identical runs") {
    const ScenarioConfig c = small_config();
    const RunResult a = run(c);
    const RunResult b = run(c);
    CHECK(a.log.serialize() == b.log.serialize());
    CHECK(metrics_csv_row(a.metrics) == metrics_csv_row(b.metrics));
    CHECK(a.log.size() > 0);

    ScenarioConfig other = c;
    other.seed = 100;
    const RunResult d = run(other);
    CHECK(a.log.serialize() != d.log.serialize());
}

TEST_CASE("event log serialization round-trips through parse") {
    const RunResult r = run(small_config());
    const std::string text = r.log.serialize();
    const EventLog back = EventLog::parse_text(text);
    CHECK(back == r.log);
    CHECK(back.serialize() == text);
}

TEST_CASE("metrics carry the scheme name and seed") {
    ScenarioConfig c = small_config();
    c.scheme = SchemeId::S_SAW;
    c.seed = 31;
    const RunResult r = run(c);
    CHECK(r.metrics.scheme == "s-saw");
    CHECK(r.metrics.seed == 31);
}

TEST_CASE("co-located source and destination deliver on the next slot") {
    ScenarioConfig c;
    c.area = {10.0, 10.0};
    c.node_count = 1;
    c.destinations = {{5.0, 5.0}};
    c.speed = {5.0, 5.0};
    c.range = 100.0;  // the whole area is one contact domain
    c.copies = 4;
    c.ttl = 300.0;
    c.generation_interval = 30.0;
    c.generation_end = 31.0;
    c.drain = 60.0;
    c.scheme = SchemeId::DD;
    c.seed = 5;

    const RunResult r = run(c);
    CHECK(r.metrics.generated == 1);
    CHECK(r.metrics.delivered == 1);
    REQUIRE(r.metrics.avg_latency_s.has_value());
    CHECK(*r.metrics.avg_latency_s == 1.0);  // one slot after creation, exactly

    bool saw_delivery = false;
    for (const Event& e : r.log.events()) {
        if (e.kind == Event::Kind::Delivered) {
            saw_delivery = true;
            CHECK(e.time == 31.0);
            CHECK(e.b == 1);
        }
    }
    CHECK(saw_delivery);
}

TEST_CASE("unreachable destination expires every copy") {
    ScenarioConfig c;
    c.area = {1000.0, 1000.0};
    c.node_count = 1;
    c.destinations = {{999.0, 999.0}};
    c.speed = {5.0, 5.0};
    c.range = 0.5;
    c.copies = 8;
    c.ttl = 2.0;
    c.generation_interval = 30.0;
    c.generation_end = 90.0;
    c.drain = 60.0;
    c.scheme = SchemeId::S_SAW;
    c.seed = 11;

    const RunResult r = run(c);
    CHECK(r.metrics.generated == 3);
    CHECK(r.metrics.delivered == 0);
    CHECK(r.metrics.expiries == 3);
    REQUIRE(r.metrics.delivery_ratio.has_value());
    CHECK(*r.metrics.delivery_ratio == 0.0);
    CHECK(!r.metrics.avg_latency_s.has_value());
    verify_conservation(r.log);
}

TEST_CASE("tight buffers force evictions without breaking conservation") {
    ScenarioConfig c;
    c.area = {50.0, 50.0};
    c.node_count = 8;
    c.destinations = {{1000.0, 1000.0}};  // unreachable: pressure without deliveries
    c.speed = {5.0, 5.0};
    c.range = 100.0;
    c.copies = 8;
    c.ttl = 120.0;
    c.message_size = 1024;
    c.buffer_capacity = 2048;  // room for exactly two copies
    c.generation_interval = 10.0;
    c.generation_end = 200.0;
    c.drain = 200.0;
    c.scheme = SchemeId::S_SAW;
    c.seed = 17;
    c.check_invariants = true;

    const RunResult r = run(c);
    CHECK(r.metrics.evictions > 0);
    verify_conservation(r.log);
}

TEST_CASE("a run that generates nothing stays well-formed") {
    ScenarioConfig c = small_config();
    c.generation_end = 10.0;  // first generation would land at t = 20
    c.drain = 30.0;
    const RunResult r = run(c);
    CHECK(r.metrics.generated == 0);
    CHECK(!r.metrics.delivery_ratio.has_value());
    CHECK(!r.metrics.avg_latency_s.has_value());
    CHECK(!r.metrics.overhead_ratio.has_value());
}

TEST_CASE("extra-copy counter equals the budget-exceeding replications in the log") {
    ScenarioConfig c = small_config();
    c.scheme = SchemeId::TBHGR;
    c.node_count = 20;
    c.generation_end = 600.0;
    c.drain = 400.0;
    const RunResult r = run(c);
    int64_t extras = 0;
    for (const Event& e : r.log.events()) {
        if (e.kind == Event::Kind::Replicated && e.extra) extras += e.tickets;
    }
    CHECK(r.metrics.extra_copies == extras);
    verify_conservation(r.log);
}
