#include "geodtn/engine.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "geodtn/contacts.h"
#include "geodtn/errors.h"
#include "geodtn/mobility.h"

namespace geodtn {

int ScenarioConfig::mobile_count() const {
    if (mobility == MobilityKind::Rwp) return node_count;
    int total = 0;
    for (const GroupSpec& g : groups) total += g.count;
    return total;
}

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (mobility == MobilityKind::Rwp) {
        if (node_count < 0) fail("nodes must be non-negative");
        if (area.width < 0.0 || area.height < 0.0) fail("area must be non-negative");
        if (map_file || map_grid || !groups.empty()) {
            fail("map settings require map mobility");
        }
        if (destination_spec) fail("POI-derived destinations require map mobility");
        if (destinations.empty()) fail("at least one destination is required");
    } else {
        if (groups.empty()) fail("map mobility needs at least one node group");
        for (const GroupSpec& g : groups) {
            if (g.count < 0) fail("group count must be non-negative");
            if (g.interest < 0.0 || g.interest > 1.0) fail("group interest must lie in [0, 1]");
        }
        if (!map_file && !map_grid) fail("map mobility needs map_file or map_grid");
        if (map_file && map_grid) fail("map_file and map_grid are mutually exclusive");
        if (destinations.empty() && !destination_spec) {
            fail("at least one destination is required");
        }
        if (destination_spec && destination_spec->count < 1) {
            fail("destination count must be positive");
        }
        if (destination_spec && destination_spec->variation < 0.0) {
            fail("destination variation must be non-negative");
        }
    }
    if (speed.min <= 0.0 || speed.max < speed.min) fail("speed range must be positive");
    if (wait.min < 0.0 || wait.max < wait.min) fail("wait range must be non-negative");
    if (range <= 0.0) fail("transmission range must be positive");
    if (bandwidth <= 0.0) fail("bandwidth must be positive");
    if (slot <= 0.0) fail("slot duration must be positive");
    if (copies < 1) fail("copies must be at least 1");
    if (ttl <= 0.0) fail("ttl must be positive");
    if (message_size < 1) fail("message size must be positive");
    if (buffer_capacity < message_size) fail("buffer must hold at least one message");
    if (generation_interval <= 0.0) fail("generation interval must be positive");
    if (warmup < 0.0) fail("warmup must be non-negative");
    if (generation_end <= warmup) fail("generation_end must exceed warmup");
    if (drain < 0.0) fail("drain must be non-negative");
    if (window <= 0.0) fail("window must be positive");
}

namespace {

struct NodeState {
    MobilityState mob;
    Buffer buffer;
    EncounterSet psi;
    AckLedger ledger;
    int group = -1;  // POI profile index, -1 for rwp nodes and destinations
    bool is_destination = false;
};

struct MsgCensus {
    int64_t minted = 0;
    int64_t retired = 0;
};

using PairKey = std::pair<NodeId, NodeId>;

struct Flow {
    TransferQueue queue;
    double since = 0.0;
};

class Simulation {
public:
    explicit Simulation(const ScenarioConfig& cfg)
        : cfg_(cfg),
          master_(cfg.seed),
          rng_place_(master_.spawn(1)),
          rng_mob_(master_.spawn(2)),
          rng_arb_(master_.spawn(3)),
          rng_gen_(master_.spawn(4)) {
        cfg_.validate();
        setup();
    }

    RunResult run() {
        const double horizon = cfg_.generation_end + cfg_.drain;
        const auto steps = static_cast<int64_t>(std::ceil(horizon / cfg_.slot - 1e-9));
        for (int64_t k = 1; k <= steps; ++k) {
            step(static_cast<double>(k) * cfg_.slot);
        }
        RunResult result;
        result.metrics = compute_metrics(log_);
        result.metrics.scheme = scheme_name(cfg_.scheme);
        result.metrics.seed = cfg_.seed;
        result.log = std::move(log_);
        return result;
    }

private:
    void setup() {
        if (cfg_.mobility == MobilityKind::PoiMap) {
            map_ = cfg_.map_file ? load_map_file(*cfg_.map_file)
                                 : make_grid_map(cfg_.map_grid->cols, cfg_.map_grid->rows,
                                                 cfg_.map_grid->spacing, cfg_.map_grid->poi_block);
            paths_.emplace(map_);
            for (const GroupSpec& g : cfg_.groups) {
                auto it = map_.poi_groups.find(g.group_id);
                if (it == map_.poi_groups.end()) {
                    throw ConfigError("group " + std::to_string(g.group_id) +
                                      " has no POI set on the map");
                }
                profiles_.push_back({g.group_id, it->second, g.interest});
            }
        }

        const int mobiles = cfg_.mobile_count();
        nodes_.resize(mobiles);
        if (cfg_.mobility == MobilityKind::Rwp) {
            for (int i = 0; i < mobiles; ++i) {
                nodes_[i].mob = rwp_initial_state(cfg_.area, cfg_.speed, rng_place_);
            }
        } else {
            int next = 0;
            for (size_t gi = 0; gi < cfg_.groups.size(); ++gi) {
                for (int k = 0; k < cfg_.groups[gi].count; ++k, ++next) {
                    nodes_[next].group = static_cast<int>(gi);
                    nodes_[next].mob =
                        poi_initial_state(map_, *paths_, profiles_[gi], cfg_.speed, rng_place_);
                }
            }
        }
        for (NodeState& n : nodes_) n.buffer = Buffer(cfg_.buffer_capacity);

        std::vector<Position> dest_positions = cfg_.destinations;
        if (cfg_.destination_spec) {
            const auto placed = place_destinations(map_, cfg_.destination_spec->count,
                                                   cfg_.destination_spec->variation, rng_place_);
            dest_positions.insert(dest_positions.end(), placed.begin(), placed.end());
        }
        for (const Position& pos : dest_positions) {
            NodeState dest;
            dest.mob.pos = pos;
            dest.is_destination = true;
            const auto id = static_cast<NodeId>(nodes_.size());
            nodes_.push_back(std::move(dest));
            dest_ids_.push_back(id);
            dest_map_[id] = pos;
        }

        next_generation_ = cfg_.warmup + cfg_.generation_interval;
        policy_ = scheme_eviction_policy(cfg_.scheme);
    }

    bool is_mobile(NodeId id) const { return !nodes_[id].is_destination; }

    void step(double now) {
        advance_mobility(now);
        sweep_expired(now);
        const ContactPairs detected = detect_contacts(positions(), cfg_.range);
        const ContactPairs matched = arbitrate_slots(detected, rng_arb_);
        spread_knowledge(detected, now);
        run_transfers(detected, matched, now);
        generate_messages(now);
        if (cfg_.check_invariants) check_census(now);
    }

    std::vector<Position> positions() const {
        std::vector<Position> out(nodes_.size());
        for (size_t i = 0; i < nodes_.size(); ++i) out[i] = nodes_[i].mob.pos;
        return out;
    }

    void advance_mobility(double) {
        for (NodeState& n : nodes_) {
            if (n.is_destination) continue;
            if (cfg_.mobility == MobilityKind::Rwp) {
                rwp_step(n.mob, cfg_.slot, cfg_.area, cfg_.speed, cfg_.wait, rng_mob_);
            } else {
                poi_step(n.mob, cfg_.slot, map_, *paths_, profiles_[n.group], cfg_.speed,
                         cfg_.wait, rng_mob_);
            }
        }
    }

    void sweep_expired(double now) {
        for (size_t i = 0; i < nodes_.size(); ++i) {
            NodeState& n = nodes_[i];
            if (n.is_destination) continue;
            std::vector<MessageId> dead;
            for (const auto& [id, copy] : n.buffer.copies()) {
                if (remaining_ttl(copy, now) <= 0.0) dead.push_back(id);
            }
            for (MessageId id : dead) {
                const auto copy = n.buffer.remove(id);
                retire(now, Event::Kind::Expired, *copy, static_cast<NodeId>(i), -1);
            }
        }
    }

    // Psi membership and ACK ledgers spread over every detected contact, from
    // slot-start snapshots so within-slot order cannot matter. Only contact
    // endpoints can gain ledger entries, so only their buffers are rechecked.
    void spread_knowledge(const ContactPairs& detected, double now) {
        if (detected.empty()) return;
        std::map<NodeId, AckLedger> frozen;
        for (const auto& [a, b] : detected) {
            frozen.try_emplace(a, nodes_[a].ledger);
            frozen.try_emplace(b, nodes_[b].ledger);
        }
        for (const auto& [a, b] : detected) {
            if (nodes_[b].is_destination) nodes_[a].psi.add(b);
            if (nodes_[a].is_destination) nodes_[b].psi.add(a);
            nodes_[a].ledger.merge(frozen.at(b));
            nodes_[b].ledger.merge(frozen.at(a));
        }
        for (const auto& entry : frozen) {
            const NodeId id = entry.first;
            NodeState& n = nodes_[id];
            if (n.is_destination) continue;
            for (const MessageCopy& dropped : apply_acks(n.buffer, n.ledger)) {
                retire(now, Event::Kind::Acked, dropped, id, -1);
            }
        }
    }

    NodeSnapshot snapshot(NodeId id) const {
        const NodeState& n = nodes_[id];
        return {id, n.mob.pos, n.mob.vel, &n.buffer, &n.psi, &n.ledger};
    }

    Decision direction_decision(NodeId from, NodeId to, double now) {
        EncounterContext ctx;
        ctx.carrier = snapshot(from);
        ctx.peer = snapshot(to);
        ctx.destinations = &dest_map_;
        ctx.now = now;
        ctx.range = cfg_.range;
        ctx.window = cfg_.window;
        std::vector<MessageCopy> carried;
        carried.reserve(nodes_[from].buffer.count());
        for (const auto& [id, copy] : nodes_[from].buffer.copies()) carried.push_back(copy);
        return decide(cfg_.scheme, ctx, transmission_order(cfg_.scheme, carried, now));
    }

    void run_transfers(const ContactPairs& detected, const ContactPairs& matched, double now) {
        // contact broke: in-flight progress is lost
        const std::set<PairKey> in_contact(detected.begin(), detected.end());
        for (auto it = flows_.begin(); it != flows_.end();) {
            it = in_contact.count(it->first) ? std::next(it) : flows_.erase(it);
        }
        for (const auto& [a, b] : matched) {
            auto flow_it = flows_.find({a, b});
            if (flow_it == flows_.end()) {
                Decision ab = direction_decision(a, b, now);
                const Decision ba = direction_decision(b, a, now);
                for (MessageId id : ab.syncs) sync_pair(a, b, id);
                for (MessageId id : ba.syncs) sync_pair(a, b, id);
                Flow flow;
                flow.since = now;
                flow.queue.actions = std::move(ab.actions);
                flow.queue.actions.insert(flow.queue.actions.end(), ba.actions.begin(),
                                          ba.actions.end());
                std::stable_partition(
                    flow.queue.actions.begin(), flow.queue.actions.end(),
                    [](const TransferAction& t) { return t.mode == TransferMode::Deliver; });
                flow_it = flows_.emplace(PairKey{a, b}, std::move(flow)).first;
            }
            const Contact contact{a, b, flow_it->second.since, cfg_.bandwidth};
            for (const TransferAction& action :
                 execute_transfers(contact, flow_it->second.queue, cfg_.slot)) {
                apply_action(action, now);
            }
            if (flow_it->second.queue.done()) flows_.erase(flow_it);
        }
    }

    void sync_pair(NodeId a, NodeId b, MessageId id) {
        MessageCopy* ca = nodes_[a].buffer.find(id);
        MessageCopy* cb = nodes_[b].buffer.find(id);
        if (ca && cb) sync_thresholds(*ca, *cb);
    }

    static void lower(std::optional<double>& slot, const std::optional<double>& v) {
        if (v && (!slot || *v < *slot)) slot = *v;
    }

    void apply_action(const TransferAction& action, double now) {
        NodeState& from = nodes_[action.from];
        NodeState& to = nodes_[action.to];
        MessageCopy* src = from.buffer.find(action.msg);
        if (!src) return;  // expired, evicted or acked while in flight
        if (from.ledger.contains(action.msg) || to.ledger.contains(action.msg)) return;
        if (remaining_ttl(*src, now) <= 0.0) return;

        switch (action.mode) {
            case TransferMode::Deliver: {
                if (!to.is_destination || src->destination != action.to) return;
                const MessageCopy copy = *from.buffer.remove(action.msg);
                to.ledger.add(action.msg);
                from.ledger.add(action.msg);
                retire(now, Event::Kind::Delivered, copy, action.from, action.to);
                return;
            }
            case TransferMode::Replicate: {
                if (to.buffer.contains(action.msg)) return;
                // the split was frozen at decision time; drop it if stale
                if (action.mint_extra ? src->tickets != action.keep
                                      : src->tickets != action.give + action.keep) {
                    return;
                }
                if (!make_room(to, action.to, src->size, now)) return;
                MessageCopy replica = *src;
                lower(src->threshold_time, action.set_threshold_time);
                lower(src->threshold_dist, action.set_threshold_dist);
                replica.threshold_time = src->threshold_time;
                replica.threshold_dist = src->threshold_dist;
                replica.tickets = action.give;
                replica.hop_trace.push_back(action.to);
                src->tickets = action.keep;
                to.buffer.insert(std::move(replica));
                if (action.mint_extra) census_[action.msg].minted += action.give;
                log_.append({Event::Kind::Replicated, now, action.msg, action.from, action.to,
                             action.give, action.mint_extra});
                return;
            }
            case TransferMode::ForwardConsume: {
                if (to.buffer.contains(action.msg)) return;
                if (src->tickets != action.give) return;
                if (!make_room(to, action.to, src->size, now)) return;
                MessageCopy moved = *from.buffer.remove(action.msg);
                lower(moved.threshold_time, action.set_threshold_time);
                moved.hop_trace.push_back(action.to);
                const int tickets = moved.tickets;
                to.buffer.insert(std::move(moved));
                log_.append({Event::Kind::Forwarded, now, action.msg, action.from, action.to,
                             tickets, false});
                return;
            }
        }
    }

    bool make_room(NodeState& node, NodeId id, uint64_t size, double now) {
        if (size > node.buffer.capacity()) return false;
        for (const MessageCopy& victim : evict_for(node.buffer, size, now, policy_)) {
            retire(now, Event::Kind::Evicted, victim, id, -1);
        }
        return true;
    }

    void retire(double now, Event::Kind kind, const MessageCopy& copy, NodeId a, NodeId b) {
        census_[copy.id].retired += copy.tickets;
        log_.append({kind, now, copy.id, a, b, copy.tickets, false});
    }

    void generate_messages(double now) {
        if (cfg_.mobile_count() == 0 || dest_ids_.empty()) return;
        while (next_generation_ <= now + 1e-9 && next_generation_ <= cfg_.generation_end + 1e-9) {
            if (cfg_.generation_mode == GenerationMode::NetworkWide) {
                const auto source =
                    static_cast<NodeId>(rng_gen_.uniform_index(cfg_.mobile_count()));
                create_message(source, pick_destination(), now);
            } else {
                for (NodeId source = 0; source < cfg_.mobile_count(); ++source) {
                    create_message(source, pick_destination(), now);
                }
            }
            next_generation_ += cfg_.generation_interval;
        }
    }

    NodeId pick_destination() {
        return dest_ids_[rng_gen_.uniform_index(dest_ids_.size())];
    }

    void create_message(NodeId source, NodeId dest, double now) {
        MessageCopy copy;
        copy.id = ++last_msg_id_;
        copy.source = source;
        copy.destination = dest;
        copy.size = cfg_.message_size;
        copy.created_at = now;
        copy.ttl_initial = cfg_.ttl;
        copy.tickets = cfg_.copies;
        copy.hop_trace = {source};
        make_room(nodes_[source], source, copy.size, now);
        census_[copy.id].minted = copy.tickets;
        log_.append({Event::Kind::Created, now, copy.id, source, dest, copy.tickets, false});
        nodes_[source].buffer.insert(std::move(copy));
    }

    void check_census(double now) {
        std::map<MessageId, int64_t> live;
        for (const NodeState& n : nodes_) {
            for (const auto& [id, copy] : n.buffer.copies()) live[id] += copy.tickets;
        }
        for (const auto& [id, c] : census_) {
            const int64_t held = live.count(id) ? live[id] : 0;
            if (held + c.retired != c.minted) {
                std::ostringstream what;
                what << "ticket census broken at t=" << format_double(now) << " for message "
                     << id << ": minted " << c.minted << ", live " << held << ", retired "
                     << c.retired;
                throw SimError(what.str());
            }
        }
        for (const auto& [id, tickets] : live) {
            if (!census_.count(id)) {
                throw SimError("buffered copy of unknown message " + std::to_string(id));
            }
        }
    }

    ScenarioConfig cfg_;
    Rng master_;
    Rng rng_place_;
    Rng rng_mob_;
    Rng rng_arb_;
    Rng rng_gen_;

    MapGraph map_;
    std::optional<ShortestPaths> paths_;
    std::vector<PoiProfile> profiles_;
    std::vector<NodeState> nodes_;
    std::vector<NodeId> dest_ids_;
    std::map<NodeId, Position> dest_map_;
    std::map<PairKey, Flow> flows_;
    std::map<MessageId, MsgCensus> census_;
    EventLog log_;
    MessageId last_msg_id_ = 0;
    double next_generation_ = 0.0;
    EvictionPolicy policy_ = EvictionPolicy::OldestFirst;
};

}  // namespace

RunResult run(const ScenarioConfig& config) {
    Simulation sim(config);
    return sim.run();
}

}  // namespace geodtn
