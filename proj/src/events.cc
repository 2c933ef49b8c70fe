#include "geodtn/events.h"

#include <array>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "geodtn/errors.h"

namespace geodtn {

namespace {

const std::array<std::string, 7> kKindNames = {
    "created", "replicated", "forwarded", "delivered", "expired", "evicted", "acked"};

Event::Kind parse_kind(const std::string& word, int lineno) {
    for (size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == word) return static_cast<Event::Kind>(i);
    }
    throw ParseError("event log line " + std::to_string(lineno) + ": unknown record '" + word +
                     "'");
}

}  // namespace

const std::string& event_kind_name(Event::Kind kind) {
    return kKindNames[static_cast<size_t>(kind)];
}

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), end);
}

void EventLog::append(const Event& event) {
    if (!events_.empty() && event.time < events_.back().time) {
        throw SimError("event log timestamps must be non-decreasing");
    }
    events_.push_back(event);
}

void EventLog::serialize(std::ostream& out) const {
    for (const Event& e : events_) {
        out << event_kind_name(e.kind) << ' ' << format_double(e.time) << ' ' << e.msg << ' '
            << e.a << ' ' << e.b << ' ' << e.tickets << ' ' << (e.extra ? 1 : 0) << '\n';
    }
}

std::string EventLog::serialize() const {
    std::ostringstream out;
    serialize(out);
    return out.str();
}

EventLog EventLog::parse(std::istream& in) {
    EventLog log;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind, time_word;
        Event e;
        int extra = 0;
        if (!(ls >> kind >> time_word >> e.msg >> e.a >> e.b >> e.tickets >> extra)) {
            throw ParseError("event log line " + std::to_string(lineno) + ": malformed record");
        }
        e.kind = parse_kind(kind, lineno);
        char* endp = nullptr;
        e.time = std::strtod(time_word.c_str(), &endp);
        if (endp == time_word.c_str() || *endp != '\0') {
            throw ParseError("event log line " + std::to_string(lineno) + ": bad timestamp");
        }
        e.extra = extra != 0;
        log.append(e);
    }
    return log;
}

EventLog EventLog::parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

}  // namespace geodtn
