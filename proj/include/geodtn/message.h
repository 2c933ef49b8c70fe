#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "geodtn/types.h"

namespace geodtn {

// One buffered instance of a message. Copy tickets bound further replication;
// the two cached thresholds implement delegation forwarding and only ever
// decrease once set (unset compares as +infinity).
struct MessageCopy {
    MessageId id = 0;
    NodeId source = 0;
    NodeId destination = 0;
    uint64_t size = 0;
    double created_at = 0.0;
    double ttl_initial = 0.0;
    int tickets = 1;
    std::optional<double> threshold_time;   // best intersect time seen (V^T)
    std::optional<double> threshold_dist;   // best projected distance seen (V^D)
    std::vector<NodeId> hop_trace;
};

struct TicketSplit {
    int give = 0;
    int keep = 0;
};

// give = floor(tickets/2), keep = tickets - give. Throws NotSplittableError
// for tickets <= 1 (single-ticket copies are relayed, never split).
TicketSplit split_tickets(int tickets);

// ttl_initial - elapsed, floored at zero.
double remaining_ttl(const MessageCopy& copy, double now);

// Lower both copies' cached thresholds to the pairwise minimum.
// Throws MismatchedMessageError when the ids differ.
void sync_thresholds(MessageCopy& a, MessageCopy& b);

// Delivery potential in [0, 1]:
//   p = clamp((rem - V^T) / rem, 0, 1)   (0 when V^T unset)
//   U = 1 - (1 - p)^tickets
// Throws ExpiredError when no lifetime remains.
double message_utility(const MessageCopy& copy, double now);

struct AckLedger {
    std::set<MessageId> delivered_ids;

    bool contains(MessageId id) const { return delivered_ids.count(id) != 0; }
    void add(MessageId id) { delivered_ids.insert(id); }
    void merge(const AckLedger& other) {
        delivered_ids.insert(other.delivered_ids.begin(), other.delivered_ids.end());
    }
};

// Per-node record of destinations contacted so far (the visiting-preference
// signal used by TBHGR).
struct EncounterSet {
    std::set<NodeId> destinations_met;

    bool contains(NodeId dest) const { return destinations_met.count(dest) != 0; }
    void add(NodeId dest) { destinations_met.insert(dest); }
};

enum class EvictionPolicy {
    LowestUtilityFirst,  // ascending U, ties broken oldest creation first
    OldestFirst,         // FIFO drop
};

class Buffer {
public:
    Buffer() = default;
    explicit Buffer(uint64_t capacity) : capacity_(capacity) {}

    bool contains(MessageId id) const { return copies_.count(id) != 0; }
    const MessageCopy* find(MessageId id) const;
    MessageCopy* find(MessageId id);

    // Caller must have made room first; inserting a duplicate id or
    // overflowing capacity is a logic error.
    void insert(MessageCopy copy);

    // Removes and returns the copy. No-op nullopt when absent.
    std::optional<MessageCopy> remove(MessageId id);

    uint64_t capacity() const { return capacity_; }
    uint64_t used() const { return used_; }
    uint64_t free_space() const { return capacity_ - used_; }
    size_t count() const { return copies_.size(); }

    const std::map<MessageId, MessageCopy>& copies() const { return copies_; }
    std::map<MessageId, MessageCopy>& copies() { return copies_; }

private:
    uint64_t capacity_ = 0;
    uint64_t used_ = 0;
    std::map<MessageId, MessageCopy> copies_;
};

// Evicts stored copies until incoming_size fits: LowestUtilityFirst drops in
// ascending U_M order (ties oldest creation first), OldestFirst by creation
// time. Returns the removed copies, empty when the message already fits.
// The incoming message itself is never a candidate; it is not stored yet.
std::vector<MessageCopy> evict_for(Buffer& buffer, uint64_t incoming_size, double now,
                                   EvictionPolicy policy);

// Drops every buffered copy acknowledged as delivered; returns the removals.
std::vector<MessageCopy> apply_acks(Buffer& buffer, const AckLedger& ledger);

}  // namespace geodtn
