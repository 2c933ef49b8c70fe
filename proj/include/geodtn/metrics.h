#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "geodtn/events.h"

namespace geodtn {

// The three evaluation metrics plus the raw counters they derive from.
// Ratio fields are empty when undefined (nothing generated / delivered) and
// serialize as empty CSV cells.
struct RunMetrics {
    std::string scheme;
    uint64_t seed = 0;
    int64_t generated = 0;
    int64_t delivered = 0;  // unique message ids
    std::optional<double> delivery_ratio;
    std::optional<double> avg_latency_s;
    int64_t transmissions = 0;  // replicate + forward + deliver events
    std::optional<double> overhead_ratio;
    int64_t extra_copies = 0;
    int64_t evictions = 0;
    int64_t expiries = 0;
};

// Unique delivered ids over generated count. Throws NoMessagesError when the
// log created nothing.
double delivery_ratio(const EventLog& log);

// Mean first-delivery time minus creation time; later duplicates of an id are
// ignored. Throws NothingDeliveredError.
double avg_latency(const EventLog& log);

// (transmissions - deliveries) / deliveries. Throws NothingDeliveredError.
double overhead_ratio(const EventLog& log);

// All counters in one pass; ratio fields left empty where their inputs are
// zero. scheme/seed are the caller's to fill.
RunMetrics compute_metrics(const EventLog& log);

std::string metrics_csv_header();
std::string metrics_csv_row(const RunMetrics& m);

}  // namespace geodtn
