#include "geodtn/message.h"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "geodtn/errors.h"

namespace geodtn {

TicketSplit split_tickets(int tickets) {
    if (tickets <= 1) throw NotSplittableError{};
    const int give = tickets / 2;
    return TicketSplit{give, tickets - give};
}

double remaining_ttl(const MessageCopy& copy, double now) {
    return std::max(0.0, copy.ttl_initial - (now - copy.created_at));
}

namespace {

void lower(std::optional<double>& a, std::optional<double>& b) {
    if (a && b) {
        a = b = std::min(*a, *b);
    } else if (a) {
        b = a;
    } else if (b) {
        a = b;
    }
}

}  // namespace

void sync_thresholds(MessageCopy& a, MessageCopy& b) {
    if (a.id != b.id) throw MismatchedMessageError{};
    lower(a.threshold_time, b.threshold_time);
    lower(a.threshold_dist, b.threshold_dist);
}

double message_utility(const MessageCopy& copy, double now) {
    const double rem = remaining_ttl(copy, now);
    if (rem <= 0.0) throw ExpiredError{};
    double p = 0.0;
    if (copy.threshold_time) {
        p = std::clamp((rem - *copy.threshold_time) / rem, 0.0, 1.0);
    }
    return 1.0 - std::pow(1.0 - p, copy.tickets);
}

const MessageCopy* Buffer::find(MessageId id) const {
    auto it = copies_.find(id);
    return it == copies_.end() ? nullptr : &it->second;
}

MessageCopy* Buffer::find(MessageId id) {
    auto it = copies_.find(id);
    return it == copies_.end() ? nullptr : &it->second;
}

void Buffer::insert(MessageCopy copy) {
    assert(copy.size <= free_space());
    used_ += copy.size;
    auto [it, inserted] = copies_.emplace(copy.id, std::move(copy));
    assert(inserted);
    (void)it;
    (void)inserted;
}

std::optional<MessageCopy> Buffer::remove(MessageId id) {
    auto it = copies_.find(id);
    if (it == copies_.end()) return std::nullopt;
    MessageCopy out = std::move(it->second);
    used_ -= out.size;
    copies_.erase(it);
    return out;
}

std::vector<MessageCopy> evict_for(Buffer& buffer, uint64_t incoming_size, double now,
                                   EvictionPolicy policy) {
    assert(incoming_size <= buffer.capacity());
    std::vector<MessageCopy> evicted;
    if (buffer.free_space() >= incoming_size) return evicted;

    struct Victim {
        MessageId id;
        double key1;  // utility or creation time
        double key2;  // creation-time tie break
    };
    std::vector<Victim> order;
    order.reserve(buffer.count());
    for (const auto& [id, copy] : buffer.copies()) {
        if (policy == EvictionPolicy::LowestUtilityFirst) {
            const double u = remaining_ttl(copy, now) > 0.0 ? message_utility(copy, now) : 0.0;
            order.push_back({id, u, copy.created_at});
        } else {
            order.push_back({id, copy.created_at, 0.0});
        }
    }
    std::sort(order.begin(), order.end(), [](const Victim& a, const Victim& b) {
        if (a.key1 != b.key1) return a.key1 < b.key1;
        if (a.key2 != b.key2) return a.key2 < b.key2;
        return a.id < b.id;
    });

    for (const auto& victim : order) {
        if (buffer.free_space() >= incoming_size) break;
        evicted.push_back(*buffer.remove(victim.id));
    }
    return evicted;
}

std::vector<MessageCopy> apply_acks(Buffer& buffer, const AckLedger& ledger) {
    std::vector<MessageId> doomed;
    for (const auto& [id, copy] : buffer.copies()) {
        if (ledger.contains(id)) doomed.push_back(id);
    }
    std::vector<MessageCopy> dropped;
    dropped.reserve(doomed.size());
    for (MessageId id : doomed) dropped.push_back(*buffer.remove(id));
    return dropped;
}

}  // namespace geodtn
