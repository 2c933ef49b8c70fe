#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geodtn/contacts.h"
#include "geodtn/message.h"
#include "geodtn/types.h"

namespace geodtn {

enum class SchemeId { DD, S_SAW, B_SAW, S_ABGR, S_TBGR, B_TBGR, TBGR, TBHGR };

// Config-facing names: dd, s-saw, b-saw, s-abgr, s-tbgr, b-tbgr, tbgr, tbhgr.
// parse_scheme throws ConfigError on anything else.
SchemeId parse_scheme(const std::string& name);
const std::string& scheme_name(SchemeId scheme);
const std::vector<SchemeId>& all_schemes();

EvictionPolicy scheme_eviction_policy(SchemeId scheme);

// Read-only view of one endpoint at slot start.
struct NodeSnapshot {
    NodeId id = 0;
    Position pos;
    Velocity vel;
    const Buffer* buffer = nullptr;
    const EncounterSet* psi = nullptr;
    const AckLedger* ledger = nullptr;
};

struct EncounterContext {
    NodeSnapshot carrier;
    NodeSnapshot peer;
    const std::map<NodeId, Position>* destinations = nullptr;
    double now = 0.0;
    double range = 0.0;
    double window = 0.0;  // W, used by the projected-distance branch
};

// Everything decide() wants done: transfers to enqueue plus message ids whose
// thresholds should be lowered pairwise (peer already holds the copy).
struct Decision {
    std::vector<TransferAction> actions;
    std::vector<MessageId> syncs;
};

// Peer-side intersect-time metric with the contact convention folded in: a
// peer already within transmission range of the destination scores 0 (best
// possible); a waiting peer or one heading away (phi >= pi/2) is invalid.
struct RelayMetric {
    bool valid = false;
    double time = 0.0;
};
RelayMetric relay_metric(const Position& pos, const Velocity& vel, const Position& dest,
                         double range);

// Carrier metric strictly better than peer metric, both heading toward the
// destination, both moving.
bool cond_abgr(const EncounterContext& ctx, const MessageCopy& copy);

// Cached-threshold relay test: V^T (unset = +infinity) still above the peer's
// intersect time, peer heading toward the destination. Caller has checked the
// peer is moving.
bool cond_tbgr_relay(const EncounterContext& ctx, const MessageCopy& copy);

// Local-maximum test: a recorded V^T exceeding the copy's remaining lifetime.
// Unset V^T is false: no finite delivery-time evidence exists yet.
bool cond_local_max(const MessageCopy& copy, double now);

// Phase-1 handles copies still splittable (tickets > 1); phase-2 relays
// single-ticket copies. Both assume a moving peer that lacks the copy.
std::optional<TransferAction> tbhgr_phase1(const EncounterContext& ctx, const MessageCopy& copy);
std::optional<TransferAction> tbhgr_phase2(const EncounterContext& ctx, const MessageCopy& copy);

// Scan order for an encounter: descending delivery utility under TBHGR
// (ties: older creation, then lower id), creation order otherwise.
std::vector<MessageCopy> transmission_order(SchemeId scheme, const std::vector<MessageCopy>& carried,
                                            double now);

// Per-encounter policy for one direction (carrier's copies toward peer).
// Pure in its inputs; delivery actions come before every replication.
Decision decide(SchemeId scheme, const EncounterContext& ctx,
                const std::vector<MessageCopy>& carried);

}  // namespace geodtn
