#include "geodtn/metrics.h"

#include <map>
#include <sstream>

#include "geodtn/errors.h"

namespace geodtn {

namespace {

struct Tally {
    int64_t generated = 0;
    int64_t transmissions = 0;
    int64_t extra_copies = 0;
    int64_t evictions = 0;
    int64_t expiries = 0;
    std::map<MessageId, double> created_at;
    std::map<MessageId, double> first_delivery;
};

Tally tally(const EventLog& log) {
    Tally t;
    for (const Event& e : log.events()) {
        switch (e.kind) {
            case Event::Kind::Created:
                ++t.generated;
                t.created_at.emplace(e.msg, e.time);
                break;
            case Event::Kind::Replicated:
                ++t.transmissions;
                if (e.extra) ++t.extra_copies;
                break;
            case Event::Kind::Forwarded:
                ++t.transmissions;
                break;
            case Event::Kind::Delivered:
                ++t.transmissions;
                t.first_delivery.emplace(e.msg, e.time);
                break;
            case Event::Kind::Expired:
                ++t.expiries;
                break;
            case Event::Kind::Evicted:
                ++t.evictions;
                break;
            case Event::Kind::Acked:
                break;
        }
    }
    return t;
}

}  // namespace

double delivery_ratio(const EventLog& log) {
    const Tally t = tally(log);
    if (t.generated == 0) throw NoMessagesError();
    return static_cast<double>(t.first_delivery.size()) / static_cast<double>(t.generated);
}

double avg_latency(const EventLog& log) {
    const Tally t = tally(log);
    if (t.first_delivery.empty()) throw NothingDeliveredError();
    double sum = 0.0;
    for (const auto& [msg, at] : t.first_delivery) sum += at - t.created_at.at(msg);
    return sum / static_cast<double>(t.first_delivery.size());
}

double overhead_ratio(const EventLog& log) {
    const Tally t = tally(log);
    const auto delivered = static_cast<int64_t>(t.first_delivery.size());
    if (delivered == 0) throw NothingDeliveredError();
    return static_cast<double>(t.transmissions - delivered) / static_cast<double>(delivered);
}

RunMetrics compute_metrics(const EventLog& log) {
    const Tally t = tally(log);
    RunMetrics m;
    m.generated = t.generated;
    m.delivered = static_cast<int64_t>(t.first_delivery.size());
    m.transmissions = t.transmissions;
    m.extra_copies = t.extra_copies;
    m.evictions = t.evictions;
    m.expiries = t.expiries;
    if (m.generated > 0) {
        m.delivery_ratio = static_cast<double>(m.delivered) / static_cast<double>(m.generated);
    }
    if (m.delivered > 0) {
        double sum = 0.0;
        for (const auto& [msg, at] : t.first_delivery) sum += at - t.created_at.at(msg);
        m.avg_latency_s = sum / static_cast<double>(m.delivered);
        m.overhead_ratio =
            static_cast<double>(m.transmissions - m.delivered) / static_cast<double>(m.delivered);
    }
    return m;
}

std::string metrics_csv_header() {
    return "scheme,seed,generated,delivered,delivery_ratio,avg_latency_s,transmissions,"
           "overhead_ratio,extra_copies,evictions,expiries";
}

std::string metrics_csv_row(const RunMetrics& m) {
    std::ostringstream out;
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    out << m.scheme << ',' << m.seed << ',' << m.generated << ',' << m.delivered << ','
        << opt(m.delivery_ratio) << ',' << opt(m.avg_latency_s) << ',' << m.transmissions << ','
        << opt(m.overhead_ratio) << ',' << m.extra_copies << ',' << m.evictions << ','
        << m.expiries;
    return out.str();
}

}  // namespace geodtn
