#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geodtn/types.h"

namespace geodtn {

// One lifecycle record. Field use by kind:
//   Created    a=source, b=destination, tickets=initial budget L
//   Replicated a=from, b=to, tickets=tickets handed over, extra=beyond budget
//   Forwarded  a=from, b=to, tickets moved with the copy
//   Delivered  a=carrier, b=destination, tickets retired
//   Expired / Evicted / Acked  a=holder, tickets retired
struct Event {
    enum class Kind { Created, Replicated, Forwarded, Delivered, Expired, Evicted, Acked };

    Kind kind = Kind::Created;
    double time = 0.0;
    MessageId msg = 0;
    NodeId a = -1;
    NodeId b = -1;
    int tickets = 0;
    bool extra = false;

    bool operator==(const Event&) const = default;
};

const std::string& event_kind_name(Event::Kind kind);

// Append-only, timestamps non-decreasing. Serialization is byte-stable: the
// same log always produces the same text, and parse() round-trips it.
class EventLog {
public:
    void append(const Event& event);

    const std::vector<Event>& events() const { return events_; }
    bool empty() const { return events_.empty(); }
    size_t size() const { return events_.size(); }

    void serialize(std::ostream& out) const;
    std::string serialize() const;
    static EventLog parse(std::istream& in);
    static EventLog parse_text(const std::string& text);

    bool operator==(const EventLog&) const = default;

private:
    std::vector<Event> events_;
};

// Shortest round-trip decimal form, identical for identical doubles.
std::string format_double(double value);

}  // namespace geodtn
