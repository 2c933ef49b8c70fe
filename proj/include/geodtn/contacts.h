#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "geodtn/rng.h"
#include "geodtn/types.h"

namespace geodtn {

struct Contact {
    NodeId node_a = 0;
    NodeId node_b = 0;
    double started_at = 0.0;
    double link_rate = 0.0;  // bits per second
};

enum class TransferMode {
    Replicate,       // receiver gains a copy with `give` tickets, sender keeps `keep`
    ForwardConsume,  // receiver gains the copy, sender's copy is deleted
    Deliver,         // receiver is the destination
};

// One buffered-message transfer decided by a routing scheme. Applied
// atomically on completion; an unfinished transfer has no effect.
struct TransferAction {
    MessageId msg = 0;
    NodeId from = 0;
    NodeId to = 0;
    TransferMode mode = TransferMode::Replicate;
    int give = 0;
    int keep = 0;
    bool mint_extra = false;  // copy created beyond the original ticket budget
    std::optional<double> set_threshold_time;  // lowered V^T recorded on completion
    std::optional<double> set_threshold_dist;  // lowered V^D recorded on completion
    uint64_t bytes = 0;
};

using ContactPairs = std::vector<std::pair<NodeId, NodeId>>;

// Every unordered pair within `range` of each other (inclusive boundary),
// ascending (i, j) order. Runs on the active proximity kernel.
ContactPairs detect_contacts(const std::vector<Position>& positions, double range);

// Random-greedy maximal matching over the detected pairs: the list is
// shuffled with `rng`, then pairs are kept while both endpoints are free, so
// no node holds two connections in one slot.
ContactPairs arbitrate_slots(const ContactPairs& pairs, Rng& rng);

// In-flight state for one matched pair. Persists across slots while the pair
// stays in contact; byte progress on the head action carries over when the
// pair is re-matched, and the whole queue drops when the contact breaks.
struct TransferQueue {
    std::vector<TransferAction> actions;
    size_t next = 0;             // first unfinished action
    double head_progress = 0.0;  // bytes already sent for actions[next]

    bool done() const { return next >= actions.size(); }
};

// Advances the queue by one slot's byte budget, link_rate * slot_duration / 8,
// and returns the actions that completed this slot in order. Actions are
// all-or-nothing: one that does not finish inside the budget leaves only
// recorded progress, never a partial effect.
std::vector<TransferAction> execute_transfers(const Contact& contact, TransferQueue& queue,
                                              double slot_duration);

}  // namespace geodtn
