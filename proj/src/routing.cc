#include "geodtn/routing.h"

#include <algorithm>
#include <array>
#include <limits>

#include "geodtn/errors.h"
#include "geodtn/geometry.h"

namespace geodtn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::array<std::string, 8> kSchemeNames = {
    "dd", "s-saw", "b-saw", "s-abgr", "s-tbgr", "b-tbgr", "tbgr", "tbhgr"};

double threshold_or_inf(const std::optional<double>& v) { return v ? *v : kInf; }

}  // namespace

SchemeId parse_scheme(const std::string& name) {
    for (size_t i = 0; i < kSchemeNames.size(); ++i) {
        if (kSchemeNames[i] == name) return static_cast<SchemeId>(i);
    }
    throw ConfigError("unknown scheme '" + name + "'");
}

const std::string& scheme_name(SchemeId scheme) {
    return kSchemeNames[static_cast<size_t>(scheme)];
}

const std::vector<SchemeId>& all_schemes() {
    static const std::vector<SchemeId> all = {
        SchemeId::DD,     SchemeId::S_SAW,  SchemeId::B_SAW, SchemeId::S_ABGR,
        SchemeId::S_TBGR, SchemeId::B_TBGR, SchemeId::TBGR,  SchemeId::TBHGR};
    return all;
}

EvictionPolicy scheme_eviction_policy(SchemeId scheme) {
    return scheme == SchemeId::TBHGR ? EvictionPolicy::LowestUtilityFirst
                                     : EvictionPolicy::OldestFirst;
}

RelayMetric relay_metric(const Position& pos, const Velocity& vel, const Position& dest,
                         double range) {
    if (vel.is_zero()) return {};
    const double d = distance(pos, dest);
    if (d <= range) return {true, 0.0};
    const RelativeAngle phi = relative_angle(pos, vel, dest);
    if (!phi.heading_toward()) return {};
    return {true, intersect_time(d, range, vel.magnitude(), phi)};
}

bool cond_abgr(const EncounterContext& ctx, const MessageCopy& copy) {
    const auto it = ctx.destinations->find(copy.destination);
    if (it == ctx.destinations->end()) return false;
    const RelayMetric mi = relay_metric(ctx.carrier.pos, ctx.carrier.vel, it->second, ctx.range);
    const RelayMetric mj = relay_metric(ctx.peer.pos, ctx.peer.vel, it->second, ctx.range);
    return mi.valid && mj.valid && mi.time > mj.time;
}

bool cond_tbgr_relay(const EncounterContext& ctx, const MessageCopy& copy) {
    const auto it = ctx.destinations->find(copy.destination);
    if (it == ctx.destinations->end()) return false;
    const RelayMetric mj = relay_metric(ctx.peer.pos, ctx.peer.vel, it->second, ctx.range);
    return mj.valid && threshold_or_inf(copy.threshold_time) > mj.time;
}

bool cond_local_max(const MessageCopy& copy, double now) {
    return copy.threshold_time && *copy.threshold_time > remaining_ttl(copy, now);
}

namespace {

TransferAction make_action(const EncounterContext& ctx, const MessageCopy& copy,
                           TransferMode mode, int give, int keep) {
    TransferAction a;
    a.msg = copy.id;
    a.from = ctx.carrier.id;
    a.to = ctx.peer.id;
    a.mode = mode;
    a.give = give;
    a.keep = keep;
    a.bytes = copy.size;
    return a;
}

// Peer geometry toward one copy's destination, shared by the TBHGR branches.
struct PeerView {
    double dist = 0.0;
    bool within = false;   // already inside the destination's range
    bool toward = false;   // within, or moving with phi < pi/2
    double metric = 0.0;   // intersect time, 0 when within
    RelativeAngle phi;     // meaningful only when !within
};

PeerView peer_view(const EncounterContext& ctx, const Position& dest) {
    PeerView v;
    v.dist = distance(ctx.peer.pos, dest);
    v.within = v.dist <= ctx.range;
    if (v.within) {
        v.toward = true;
        return v;
    }
    v.phi = relative_angle(ctx.peer.pos, ctx.peer.vel, dest);
    v.toward = v.phi.heading_toward();
    if (v.toward) v.metric = intersect_time(v.dist, ctx.range, ctx.peer.vel.magnitude(), v.phi);
    return v;
}

}  // namespace

std::optional<TransferAction> tbhgr_phase1(const EncounterContext& ctx, const MessageCopy& copy) {
    const auto it = ctx.destinations->find(copy.destination);
    if (it == ctx.destinations->end() || copy.tickets <= 1 || ctx.peer.vel.is_zero()) {
        return std::nullopt;
    }
    const PeerView peer = peer_view(ctx, it->second);
    if (peer.toward) {
        if (threshold_or_inf(copy.threshold_time) > peer.metric &&
            ctx.peer.psi->contains(copy.destination)) {
            const TicketSplit s = split_tickets(copy.tickets);
            TransferAction a = make_action(ctx, copy, TransferMode::Replicate, s.give, s.keep);
            a.set_threshold_time = peer.metric;
            return a;
        }
        if (cond_local_max(copy, ctx.now)) {
            const TicketSplit s = split_tickets(copy.tickets);
            return make_action(ctx, copy, TransferMode::Replicate, s.give, s.keep);
        }
        return std::nullopt;
    }
    const double projected =
        projected_distance(peer.dist, ctx.window, ctx.peer.vel.magnitude(), peer.phi, ctx.range);
    if (threshold_or_inf(copy.threshold_dist) > projected) {
        TransferAction a = make_action(ctx, copy, TransferMode::Replicate, 1, copy.tickets - 1);
        a.set_threshold_dist = projected;
        return a;
    }
    return std::nullopt;
}

std::optional<TransferAction> tbhgr_phase2(const EncounterContext& ctx, const MessageCopy& copy) {
    const auto it = ctx.destinations->find(copy.destination);
    if (it == ctx.destinations->end() || copy.tickets != 1 || ctx.peer.vel.is_zero()) {
        return std::nullopt;
    }
    if (!ctx.peer.psi->contains(copy.destination)) return std::nullopt;
    const PeerView peer = peer_view(ctx, it->second);
    if (peer.toward && threshold_or_inf(copy.threshold_time) > peer.metric) {
        TransferAction a = make_action(ctx, copy, TransferMode::ForwardConsume, copy.tickets, 0);
        a.set_threshold_time = peer.metric;
        return a;
    }
    if (cond_local_max(copy, ctx.now)) {
        TransferAction a = make_action(ctx, copy, TransferMode::Replicate, 1, copy.tickets);
        a.mint_extra = true;
        return a;
    }
    return std::nullopt;
}

std::vector<MessageCopy> transmission_order(SchemeId scheme,
                                            const std::vector<MessageCopy>& carried, double now) {
    struct Key {
        double primary;
        double created;
        MessageId id;
        size_t idx;
    };
    std::vector<Key> keys;
    keys.reserve(carried.size());
    for (size_t i = 0; i < carried.size(); ++i) {
        const MessageCopy& c = carried[i];
        double primary = 0.0;
        if (scheme == SchemeId::TBHGR) {
            // expired copies sink to the end; decide() skips them anyway
            primary = remaining_ttl(c, now) > 0.0 ? -message_utility(c, now) : 1.0;
        }
        keys.push_back({primary, c.created_at, c.id, i});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if (a.primary != b.primary) return a.primary < b.primary;
        if (a.created != b.created) return a.created < b.created;
        return a.id < b.id;
    });
    std::vector<MessageCopy> out;
    out.reserve(carried.size());
    for (const Key& k : keys) out.push_back(carried[k.idx]);
    return out;
}

namespace {

bool scheme_uses_thresholds(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::S_TBGR:
        case SchemeId::B_TBGR:
        case SchemeId::TBGR:
        case SchemeId::TBHGR:
            return true;
        default:
            return false;
    }
}

std::optional<TransferAction> replication_for(SchemeId scheme, const EncounterContext& ctx,
                                              const MessageCopy& copy) {
    switch (scheme) {
        case SchemeId::DD:
            return std::nullopt;
        case SchemeId::S_SAW:
            if (copy.tickets > 1) {
                return make_action(ctx, copy, TransferMode::Replicate, 1, copy.tickets - 1);
            }
            return std::nullopt;
        case SchemeId::B_SAW:
            if (copy.tickets > 1) {
                const TicketSplit s = split_tickets(copy.tickets);
                return make_action(ctx, copy, TransferMode::Replicate, s.give, s.keep);
            }
            return std::nullopt;
        case SchemeId::S_ABGR:
            if (copy.tickets > 1 && cond_abgr(ctx, copy)) {
                return make_action(ctx, copy, TransferMode::Replicate, 1, copy.tickets - 1);
            }
            return std::nullopt;
        case SchemeId::S_TBGR:
        case SchemeId::B_TBGR:
        case SchemeId::TBGR: {
            if (copy.tickets <= 1 || ctx.peer.vel.is_zero()) return std::nullopt;
            if (cond_tbgr_relay(ctx, copy)) {
                const auto it = ctx.destinations->find(copy.destination);
                const RelayMetric mj =
                    relay_metric(ctx.peer.pos, ctx.peer.vel, it->second, ctx.range);
                TransferAction a;
                if (scheme == SchemeId::S_TBGR) {
                    a = make_action(ctx, copy, TransferMode::Replicate, 1, copy.tickets - 1);
                } else {
                    const TicketSplit s = split_tickets(copy.tickets);
                    a = make_action(ctx, copy, TransferMode::Replicate, s.give, s.keep);
                }
                a.set_threshold_time = mj.time;
                return a;
            }
            if (scheme == SchemeId::TBGR && cond_local_max(copy, ctx.now)) {
                const TicketSplit s = split_tickets(copy.tickets);
                return make_action(ctx, copy, TransferMode::Replicate, s.give, s.keep);
            }
            return std::nullopt;
        }
        case SchemeId::TBHGR:
            if (ctx.peer.vel.is_zero()) return std::nullopt;
            return copy.tickets > 1 ? tbhgr_phase1(ctx, copy) : tbhgr_phase2(ctx, copy);
    }
    return std::nullopt;
}

}  // namespace

Decision decide(SchemeId scheme, const EncounterContext& ctx,
                const std::vector<MessageCopy>& carried) {
    Decision out;
    std::vector<TransferAction> delivers;
    std::vector<TransferAction> relays;
    const bool peer_is_destination_node = ctx.destinations->count(ctx.peer.id) != 0;
    for (const MessageCopy& copy : carried) {
        if (remaining_ttl(copy, ctx.now) <= 0.0) continue;
        if (ctx.carrier.ledger->contains(copy.id) || ctx.peer.ledger->contains(copy.id)) continue;
        if (copy.destination == ctx.peer.id) {
            delivers.push_back(make_action(ctx, copy, TransferMode::Deliver, copy.tickets, 0));
            continue;
        }
        // destination nodes accept deliveries only, never relay duty
        if (peer_is_destination_node) continue;
        if (ctx.peer.buffer->contains(copy.id)) {
            if (scheme_uses_thresholds(scheme)) out.syncs.push_back(copy.id);
            continue;
        }
        if (auto action = replication_for(scheme, ctx, copy)) relays.push_back(*action);
    }
    out.actions = std::move(delivers);
    out.actions.insert(out.actions.end(), relays.begin(), relays.end());
    return out;
}

}  // namespace geodtn
