#include "reference.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "geodtn/geometry.h"
#include "geodtn/message.h"
#include "geodtn/rng.h"

namespace geodtn::testref {

// ---------------------------------------------------------------------------
// Straight-line formulas. Deliberately written from the procedure text with
// plain arithmetic, sharing nothing with the library implementations.
// ---------------------------------------------------------------------------

double ref_intersect_time(double dist, double range, double speed, double cosphi) {
    return (dist - range) / (speed * cosphi);
}

double ref_projected_distance(double dist, double window, double speed, double cosphi,
                              double range) {
    return dist - window * cosphi * speed - range;
}

double ref_utility(double rem, const std::optional<double>& vt, int tickets) {
    double p = 0.0;
    if (vt.has_value()) {
        p = (rem - *vt) / rem;
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
    }
    double miss = 1.0;
    for (int i = 0; i < tickets; ++i) miss *= 1.0 - p;
    return 1.0 - miss;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

double dist_between(const Position& a, const Position& b) {
    return norm(a.x - b.x, a.y - b.y);
}

// cos of the angle between the velocity and the bearing to dest, straight
// from the dot product. Caller guarantees a moving node away from dest.
double cos_phi(const Position& pos, const Velocity& vel, const Position& dest) {
    const double bx = dest.x - pos.x;
    const double by = dest.y - pos.y;
    return (vel.dx * bx + vel.dy * by) / (norm(vel.dx, vel.dy) * norm(bx, by));
}

// Peer-side relay metric with the contact convention: inside the destination
// range scores 0, heading away (or waiting) is unusable.
struct RefMetric {
    bool valid = false;
    double time = 0.0;
};

RefMetric ref_metric(const Position& pos, const Velocity& vel, const Position& dest,
                     double range) {
    if (vel.dx == 0.0 && vel.dy == 0.0) return {};
    const double d = dist_between(pos, dest);
    if (d <= range) return {true, 0.0};
    const double c = cos_phi(pos, vel, dest);
    if (c <= 0.0) return {};
    return {true, ref_intersect_time(d, range, norm(vel.dx, vel.dy), c)};
}

RefOutcome replicate(int give, int keep) {
    RefOutcome out;
    out.act = RefAct::Replicate;
    out.give = give;
    out.keep = keep;
    return out;
}

}  // namespace

RefOutcome ref_decide(SchemeId scheme, const RefCase& c) {
    RefOutcome none;

    const double rem = c.copy.ttl_initial - (c.now - c.copy.created_at);
    if (rem <= 0.0) return none;
    if (c.carrier_acked || c.peer_acked) return none;

    const bool threshold_scheme = scheme == SchemeId::S_TBGR || scheme == SchemeId::B_TBGR ||
                                  scheme == SchemeId::TBGR || scheme == SchemeId::TBHGR;
    if (c.peer_has_copy) {
        if (threshold_scheme) none.act = RefAct::Sync;
        return none;
    }

    const int tickets = c.copy.tickets;
    const double vt = c.copy.threshold_time ? *c.copy.threshold_time : kInf;
    const double vd = c.copy.threshold_dist ? *c.copy.threshold_dist : kInf;
    const int half_give = tickets / 2;
    const int half_keep = tickets - half_give;
    const bool peer_moving = !(c.peer_vel.dx == 0.0 && c.peer_vel.dy == 0.0);

    switch (scheme) {
        case SchemeId::DD:
            return none;

        case SchemeId::S_SAW:
            if (tickets > 1) return replicate(1, tickets - 1);
            return none;

        case SchemeId::B_SAW:
            if (tickets > 1) return replicate(half_give, half_keep);
            return none;

        case SchemeId::S_ABGR: {
            if (tickets <= 1) return none;
            const RefMetric mi = ref_metric(c.carrier_pos, c.carrier_vel, c.dest_pos, c.range);
            const RefMetric mj = ref_metric(c.peer_pos, c.peer_vel, c.dest_pos, c.range);
            if (mi.valid && mj.valid && mi.time > mj.time) return replicate(1, tickets - 1);
            return none;
        }

        case SchemeId::S_TBGR:
        case SchemeId::B_TBGR:
        case SchemeId::TBGR: {
            if (tickets <= 1 || !peer_moving) return none;
            const RefMetric mj = ref_metric(c.peer_pos, c.peer_vel, c.dest_pos, c.range);
            if (mj.valid && vt > mj.time) {
                RefOutcome out = scheme == SchemeId::S_TBGR
                                     ? replicate(1, tickets - 1)
                                     : replicate(half_give, half_keep);
                out.set_vt = mj.time;
                return out;
            }
            if (scheme == SchemeId::TBGR && c.copy.threshold_time && vt > rem) {
                return replicate(half_give, half_keep);
            }
            return none;
        }

        case SchemeId::TBHGR: {
            if (!peer_moving) return none;
            const double d_jd = dist_between(c.peer_pos, c.dest_pos);
            const bool within = d_jd <= c.range;
            double cj = 0.0;
            if (!within) cj = cos_phi(c.peer_pos, c.peer_vel, c.dest_pos);
            const bool approaching = within || cj > 0.0;
            const double speed_j = norm(c.peer_vel.dx, c.peer_vel.dy);
            const double tj = within ? 0.0 : ref_intersect_time(d_jd, c.range, speed_j, cj);

            if (tickets > 1) {
                if (approaching && vt > tj && c.peer_met_dest) {
                    RefOutcome out = replicate(half_give, half_keep);
                    out.set_vt = tj;
                    return out;
                }
                if (approaching && c.copy.threshold_time && vt > rem) {
                    return replicate(half_give, half_keep);
                }
                if (!approaching) {
                    const double projected =
                        ref_projected_distance(d_jd, c.window, speed_j, cj, c.range);
                    if (vd > projected) {
                        RefOutcome out = replicate(1, tickets - 1);
                        out.set_vd = projected;
                        return out;
                    }
                }
                return none;
            }

            if (!c.peer_met_dest) return none;
            if (approaching && vt > tj) {
                RefOutcome out;
                out.act = RefAct::Forward;
                out.give = 1;
                out.keep = 0;
                out.set_vt = tj;
                return out;
            }
            if (c.copy.threshold_time && vt > rem) {
                RefOutcome out = replicate(1, 1);
                out.extra = true;
                return out;
            }
            return none;
        }
    }
    return none;
}

// ---------------------------------------------------------------------------
// Randomized cross-check against the production decision path.
// ---------------------------------------------------------------------------

namespace {

bool close(double a, double b) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-9 * scale;
}

bool opt_close(const std::optional<double>& a, const std::optional<double>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || close(*a, *b);
}

Position random_pos(Rng& r, double side) {
    return {r.uniform(0.0, side), r.uniform(0.0, side)};
}

Velocity random_vel(Rng& r) {
    if (r.uniform01() < 0.15) return {};
    const double angle = r.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double speed = r.uniform(0.5, 30.0);
    return {speed * std::cos(angle), speed * std::sin(angle)};
}

RefCase random_case(Rng& r, uint64_t id) {
    RefCase c;
    const double side = 1000.0;
    c.range = r.uniform(5.0, 50.0);
    c.window = r.uniform(1.0, 10.0);
    c.carrier_pos = random_pos(r, side);
    c.peer_pos = r.uniform01() < 0.5
                     ? random_pos(r, side)
                     : Position{c.carrier_pos.x + r.uniform(-2.0 * c.range, 2.0 * c.range),
                                c.carrier_pos.y + r.uniform(-2.0 * c.range, 2.0 * c.range)};
    const double u = r.uniform01();
    if (u < 0.1) {
        c.dest_pos = {c.peer_pos.x + r.uniform(-0.7 * c.range, 0.7 * c.range),
                      c.peer_pos.y + r.uniform(-0.7 * c.range, 0.7 * c.range)};
    } else if (u < 0.2) {
        c.dest_pos = {c.carrier_pos.x + r.uniform(-0.7 * c.range, 0.7 * c.range),
                      c.carrier_pos.y + r.uniform(-0.7 * c.range, 0.7 * c.range)};
    } else {
        c.dest_pos = random_pos(r, side);
    }
    c.carrier_vel = random_vel(r);
    c.peer_vel = random_vel(r);
    // sometimes aim the peer dead-on or dead-away for exact-cos coverage
    if (!c.peer_vel.is_zero() && r.uniform01() < 0.2) {
        const double bx = c.dest_pos.x - c.peer_pos.x;
        const double by = c.dest_pos.y - c.peer_pos.y;
        const double len = std::hypot(bx, by);
        if (len > 0.0) {
            const double speed = c.peer_vel.magnitude();
            const double sign = r.uniform01() < 0.5 ? 1.0 : -1.0;
            c.peer_vel = {sign * speed * bx / len, sign * speed * by / len};
        }
    }

    c.copy.id = id;
    c.copy.source = 0;
    c.copy.destination = 9;
    c.copy.size = 1024;
    c.copy.created_at = 0.0;
    c.copy.ttl_initial = r.uniform(60.0, 1800.0);
    c.now = r.uniform01() < 0.1 ? c.copy.ttl_initial + r.uniform(0.0, 100.0)
                                : r.uniform(0.0, c.copy.ttl_initial * 0.98);
    static const int ticket_pool[] = {1, 1, 2, 2, 3, 4, 5, 8, 16};
    c.copy.tickets = ticket_pool[r.uniform_index(9)];
    if (r.uniform01() < 0.65) {
        c.copy.threshold_time = r.uniform01() < 0.5
                                    ? r.uniform(0.0, 2000.0)
                                    : r.uniform(0.0, c.copy.ttl_initial * 1.2);
    }
    if (r.uniform01() < 0.5) c.copy.threshold_dist = r.uniform(0.0, 1500.0);
    c.peer_met_dest = r.uniform01() < 0.5;
    c.peer_has_copy = r.uniform01() < 0.15;
    c.carrier_acked = r.uniform01() < 0.07;
    c.peer_acked = r.uniform01() < 0.07;
    return c;
}

// Collapses a production Decision over one carried copy into a RefOutcome.
// Returns nullopt (as a failure) if the decision has an unexpected shape.
std::optional<RefOutcome> collapse(const Decision& d) {
    RefOutcome out;
    if (d.actions.empty() && d.syncs.empty()) return out;
    if (d.actions.empty() && d.syncs.size() == 1) {
        out.act = RefAct::Sync;
        return out;
    }
    if (d.actions.size() != 1 || !d.syncs.empty()) return std::nullopt;
    const TransferAction& a = d.actions.front();
    switch (a.mode) {
        case TransferMode::Replicate:
            out.act = RefAct::Replicate;
            break;
        case TransferMode::ForwardConsume:
            out.act = RefAct::Forward;
            break;
        case TransferMode::Deliver:
            return std::nullopt;  // never expected here: peer is not the destination
    }
    out.give = a.give;
    out.keep = a.keep;
    out.extra = a.mint_extra;
    out.set_vt = a.set_threshold_time;
    out.set_vd = a.set_threshold_dist;
    return out;
}

const char* act_name(RefAct a) {
    switch (a) {
        case RefAct::None: return "none";
        case RefAct::Sync: return "sync";
        case RefAct::Replicate: return "replicate";
        case RefAct::Forward: return "forward";
    }
    return "?";
}

std::string describe(const RefOutcome& o) {
    std::ostringstream s;
    s << act_name(o.act) << " give=" << o.give << " keep=" << o.keep
      << " extra=" << (o.extra ? 1 : 0);
    if (o.set_vt) s << " vt=" << *o.set_vt;
    if (o.set_vd) s << " vd=" << *o.set_vd;
    return s.str();
}

struct Harness {
    Buffer carrier_buf{1 << 20};
    Buffer peer_buf{1 << 20};
    EncounterSet carrier_psi, peer_psi;
    AckLedger carrier_led, peer_led;
    std::map<NodeId, Position> destinations;

    Decision run(SchemeId scheme, const RefCase& c) {
        peer_buf = Buffer{1 << 20};
        if (c.peer_has_copy) {
            MessageCopy held = c.copy;
            held.tickets = 1;
            peer_buf.insert(held);
        }
        peer_psi = {};
        if (c.peer_met_dest) peer_psi.add(c.copy.destination);
        carrier_led = {};
        peer_led = {};
        if (c.carrier_acked) carrier_led.add(c.copy.id);
        if (c.peer_acked) peer_led.add(c.copy.id);
        destinations = {{c.copy.destination, c.dest_pos}};

        EncounterContext ctx;
        ctx.carrier = {0, c.carrier_pos, c.carrier_vel, &carrier_buf, &carrier_psi, &carrier_led};
        ctx.peer = {1, c.peer_pos, c.peer_vel, &peer_buf, &peer_psi, &peer_led};
        ctx.destinations = &destinations;
        ctx.now = c.now;
        ctx.range = c.range;
        ctx.window = c.window;
        return decide(scheme, ctx, {c.copy});
    }
};

bool outcomes_match(const RefOutcome& got, const RefOutcome& want) {
    return got.act == want.act && got.give == want.give && got.keep == want.keep &&
           got.extra == want.extra && opt_close(got.set_vt, want.set_vt) &&
           opt_close(got.set_vd, want.set_vd);
}

}  // namespace

CrossCheck cross_check(int iterations, uint64_t seed) {
    CrossCheck result;
    Rng rng(seed);
    Harness harness;

    auto fail = [&result](const std::string& what) {
        ++result.mismatches;
        if (result.first_mismatch.empty()) result.first_mismatch = what;
    };

    for (int i = 0; i < iterations; ++i) {
        const RefCase c = random_case(rng, static_cast<uint64_t>(i) + 1);

        for (SchemeId scheme : all_schemes()) {
            ++result.cases;
            const RefOutcome want = ref_decide(scheme, c);
            const std::optional<RefOutcome> got = collapse(harness.run(scheme, c));
            if (!got || !outcomes_match(*got, want)) {
                std::ostringstream s;
                s << "case " << i << " scheme " << scheme_name(scheme) << ": production ["
                  << (got ? describe(*got) : std::string("unexpected decision shape"))
                  << "] reference [" << describe(want) << "]";
                fail(s.str());
            }
        }

        // formula-level checks on the same geometry
        const double rem = c.copy.ttl_initial - (c.now - c.copy.created_at);
        if (rem > 0.0) {
            ++result.cases;
            const double want_u = ref_utility(rem, c.copy.threshold_time, c.copy.tickets);
            const double got_u = message_utility(c.copy, c.now);
            if (!close(got_u, want_u)) fail("utility mismatch at case " + std::to_string(i));
        }
        if (c.copy.tickets > 1) {
            ++result.cases;
            const TicketSplit s = split_tickets(c.copy.tickets);
            if (s.give != c.copy.tickets / 2 || s.keep != c.copy.tickets - c.copy.tickets / 2) {
                fail("split mismatch at case " + std::to_string(i));
            }
        }
        if (!c.peer_vel.is_zero() && dist_between(c.peer_pos, c.dest_pos) > 1e-9) {
            const double d = dist_between(c.peer_pos, c.dest_pos);
            const double cj = cos_phi(c.peer_pos, c.peer_vel, c.dest_pos);
            const double speed = norm(c.peer_vel.dx, c.peer_vel.dy);
            const RelativeAngle phi = relative_angle(c.peer_pos, c.peer_vel, c.dest_pos);
            if (d > c.range + 1e-9 && cj > 1e-9) {
                ++result.cases;
                const double want_t = ref_intersect_time(d, c.range, speed, cj);
                const double got_t =
                    intersect_time(distance(c.peer_pos, c.dest_pos), c.range,
                                   c.peer_vel.magnitude(), phi);
                if (!close(got_t, want_t)) {
                    fail("intersect time mismatch at case " + std::to_string(i));
                }
            }
            ++result.cases;
            const double want_p = ref_projected_distance(d, c.window, speed, cj, c.range);
            const double got_p = projected_distance(distance(c.peer_pos, c.dest_pos), c.window,
                                                    c.peer_vel.magnitude(), phi, c.range);
            if (!close(got_p, want_p)) {
                fail("projected distance mismatch at case " + std::to_string(i));
            }
        }
        {
            ++result.cases;
            MessageCopy a = c.copy;
            MessageCopy b = c.copy;
            if (rng.uniform01() < 0.6) b.threshold_time = rng.uniform(0.0, 2000.0);
            else b.threshold_time.reset();
            if (rng.uniform01() < 0.6) b.threshold_dist = rng.uniform(0.0, 2000.0);
            else b.threshold_dist.reset();
            const double want_vt = std::min(a.threshold_time.value_or(kInf),
                                            b.threshold_time.value_or(kInf));
            const double want_vd = std::min(a.threshold_dist.value_or(kInf),
                                            b.threshold_dist.value_or(kInf));
            sync_thresholds(a, b);
            auto matches = [&](const MessageCopy& m) {
                const double vt = m.threshold_time.value_or(kInf);
                const double vd = m.threshold_dist.value_or(kInf);
                return vt == want_vt && vd == want_vd;
            };
            if (!matches(a) || !matches(b)) {
                fail("threshold sync mismatch at case " + std::to_string(i));
            }
        }
    }
    return result;
}

}  // namespace geodtn::testref
