#pragma once

// Round-based simulation loop. One round is one second of match time.
//
// Order inside a round:
//   group references -> player modes and positions -> lactate -> fatigue check
//   -> packet trigger -> per packet: route, per-hop channel + energy debits
//   -> deaths -> metrics.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "channel.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "mobility.hpp"
#include "physiology.hpp"
#include "protocol.hpp"
#include "rng.hpp"

namespace wbasn {

// Initial battery energy when the scenario does not set one. THE-FAME nodes
// carry a battery sized for a single fatigue report; WSTM nodes need enough
// for their periodic load. Calibrated against the default scenario.
inline double preset_initial_energy(ProtocolName p) { return p == ProtocolName::TheFame ? 0.002 : 27.5; }

struct Scenario {
    FieldConfig field{106.0, 68.0, SinkPlacement::Corrected, six_sink_preset(SinkPlacement::Corrected)};
    MobilityParams mobility;
    LactateParams lactate;
    FatigueThresholds thresholds;
    RadioModel radio;
    std::optional<double> initial_energy_j;
    ChannelParams channel;
    ProtocolConfig protocol = thefame_config();
    int players = 22;
    int rounds = 5400;
    std::uint64_t seed = 0;

    double initial_energy() const { return initial_energy_j.value_or(preset_initial_energy(protocol.name)); }
};

// Switches the protocol together with its trigger and sink presets.
inline Scenario with_protocol(Scenario s, ProtocolName name) {
    ProtocolConfig previous = s.protocol;
    s.protocol = preset(name);
    if (name == ProtocolName::Wstm && previous.name == ProtocolName::Wstm) s.protocol.max_hops = previous.max_hops;
    s.field.sinks = sinks_for(name, s.field);
    return s;
}

inline void validate(const Scenario& s) {
    if (s.rounds <= 0) throw ValidationError("rounds", "must be > 0");
    if (s.players <= 0) throw ValidationError("players", "must be > 0");
    validate(s.field);
    if (s.field.sinks.empty()) throw ValidationError("field.sinks", "at least one sink is required");
    validate(s.mobility);
    validate(s.lactate);
    validate(s.thresholds);
    validate(s.radio);
    validate(s.channel);
    validate(s.protocol);
    if (!(s.initial_energy() >= 0.0) || !std::isfinite(s.initial_energy()))
        throw ValidationError("energy.initial", "must be >= 0");
    if (s.initial_energy() * Battery::quanta_per_joule > 9.0e18)
        throw ValidationError("energy.initial", "too large for the battery ledger");
}

struct RoundRecord {
    int round = 0;
    int alive = 0;
    int triggered = 0;       // packets generated this round
    int sent = 0;            // per-hop transmissions
    int dropped = 0;         // hops lost on the channel
    int received = 0;        // packets that reached a sink
    int routing_failed = 0;  // packets with no usable route
    Battery::Quanta residual_quanta = 0;
    std::vector<double> delays; // seconds, one per received packet

    double residual_j() const { return Battery::to_joules(residual_quanta); }
    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct Death {
    int player_id = 0;
    int round = 0;
    friend bool operator==(const Death&, const Death&) = default;
};

struct MetricsLog {
    std::vector<RoundRecord> rounds;
    std::vector<Death> deaths; // in round order
    std::optional<int> early_stop_round;

    friend bool operator==(const MetricsLog&, const MetricsLog&) = default;
};

struct Delivery {
    std::uint64_t packet_id = 0;
    int origin = 0;
    int sink_id = 0;
    int hops = 0;
    PacketKind kind = PacketKind::FatigueEvent;
    double created_at = 0.0;
    double delivered_at = 0.0;

    friend bool operator==(const Delivery&, const Delivery&) = default;
};

using AggregatedFeed = std::vector<Delivery>;

inline bool delivered_before(const Delivery& a, const Delivery& b) {
    return a.delivered_at < b.delivered_at || (a.delivered_at == b.delivered_at && a.packet_id < b.packet_id);
}

// k-way merge of per-sink streams that are each already in delivery order.
inline AggregatedFeed aggregate(std::span<const std::vector<Delivery>> per_sink) {
    using Cursor = std::pair<std::size_t, std::size_t>; // (stream, index)
    auto later = [&](const Cursor& a, const Cursor& b) {
        return delivered_before(per_sink[b.first][b.second], per_sink[a.first][a.second]);
    };
    std::priority_queue<Cursor, std::vector<Cursor>, decltype(later)> heap(later);
    std::size_t total = 0;
    for (std::size_t s = 0; s < per_sink.size(); ++s) {
        total += per_sink[s].size();
        if (!per_sink[s].empty()) heap.push({s, 0});
    }
    AggregatedFeed feed;
    feed.reserve(total);
    while (!heap.empty()) {
        auto [s, i] = heap.top();
        heap.pop();
        feed.push_back(per_sink[s][i]);
        if (i + 1 < per_sink[s].size()) heap.push({s, i + 1});
    }
    return feed;
}

inline std::optional<int> stability_period(const MetricsLog& log) {
    if (log.deaths.empty()) return std::nullopt;
    return log.deaths.front().round;
}

struct TraceRow {
    int player_id = 0;
    int t = 0;
    double x = 0.0;
    double y = 0.0;
    SpeedMode mode = SpeedMode::Walk;
    double lactate = 0.0;
};

struct SimulationState {
    int round = 0;
    std::vector<GroupReference> references;
    std::vector<PlayerKinematics> players;
    std::vector<double> lactate;
    std::vector<FatigueMonitor> monitors;
    std::vector<Battery> batteries;
    std::vector<std::vector<Delivery>> per_sink; // index matches field.sinks
    std::vector<FatigueEvent> events;
    MetricsLog log;
    std::uint64_t next_packet_id = 0;
    Rng mobility_rng{0};
    Rng scheduling_rng{0};
    Rng channel_rng{0};
};

inline SimulationState initial_state(const Scenario& s) {
    SimulationState st;
    st.mobility_rng = Rng(s.seed, Stream::Mobility);
    st.scheduling_rng = Rng(s.seed, Stream::Scheduling);
    st.channel_rng = Rng(s.seed, Stream::Channel);
    Teams teams = make_teams(s.players, s.field, s.mobility, st.mobility_rng);
    st.references = std::move(teams.references);
    st.players = std::move(teams.players);
    auto n = st.players.size();
    st.lactate.assign(n, s.lactate.l_base);
    st.monitors.assign(n, FatigueMonitor{});
    st.batteries.assign(n, Battery(s.initial_energy()));
    st.per_sink.assign(s.field.sinks.size(), {});
    return st;
}

inline std::vector<PlayerSnapshot> snapshot(const SimulationState& st) {
    std::vector<PlayerSnapshot> out;
    out.reserve(st.players.size());
    for (std::size_t i = 0; i < st.players.size(); ++i)
        out.push_back({st.players[i].player_id, st.players[i].position, !st.batteries[i].dead(), st.lactate[i],
                       st.players[i].cumulative_distance_km});
    return out;
}

namespace detail {

inline std::size_t sink_index(const FieldConfig& f, int sink_id) {
    for (std::size_t i = 0; i < f.sinks.size(); ++i)
        if (f.sinks[i].id == sink_id) return i;
    throw Error("unknown sink id " + std::to_string(sink_id));
}

// Sends one packet along its route, charging the sender of every hop its
// transmit energy and every relay its receive energy.
inline void deliver(const Scenario& s, SimulationState& st, const Packet& pkt, RoundRecord& rec) {
    auto snap = snapshot(st);
    if (st.batteries[pkt.origin].dead()) {
        ++rec.routing_failed;
        return;
    }
    std::optional<Route> route;
    if (s.protocol.name == ProtocolName::TheFame)
        route = thefame_route(snap[pkt.origin], s.field.sinks);
    else
        route = wstm_route(pkt.origin, snap, s.field.sinks, s.protocol.max_hops);
    if (!route) {
        ++rec.routing_failed;
        return;
    }

    double bits = pkt.size_bits;
    for (const Hop& hop : route->hops) {
        Battery& sender = st.batteries[hop.from.id];
        if (sender.dead()) { // relay drained while holding the packet
            ++rec.routing_failed;
            return;
        }
        sender.debit(hop_tx_energy(s.radio, bits, hop.distance));
        ++rec.sent;
        if (transmit_hop(s.channel, pkt, st.channel_rng) == HopOutcome::Dropped) {
            ++rec.dropped;
            return;
        }
        if (hop.to.kind == NodeRef::Kind::Player) {
            st.batteries[hop.to.id].debit(rx_energy(s.radio, bits));
            continue;
        }
        double delay = propagation_delay(s.channel, *route, bits);
        ++rec.received;
        rec.delays.push_back(delay);
        st.per_sink[sink_index(s.field, hop.to.id)].push_back(
            {pkt.id, pkt.origin, hop.to.id, route->hop_count(), pkt.kind, pkt.created_at, pkt.created_at + delay});
    }
}

} // namespace detail

inline void run_round(const Scenario& s, SimulationState& st, std::vector<TraceRow>* trace = nullptr) {
    constexpr double dt = 1.0;
    int r = ++st.round;
    double t = r * dt;

    std::vector<Point> refs;
    for (auto& g : st.references)
        refs.push_back(step_group_reference(g, s.mobility, dt, s.field, st.mobility_rng));

    // Bodies keep moving after their sensor dies, so trajectories do not depend
    // on the protocol under test.
    for (auto& k : st.players) {
        schedule_mode(k, s.mobility, dt, st.scheduling_rng);
        step_player(k, refs[k.team], s.mobility, dt, s.field, st.mobility_rng);
    }

    std::vector<bool> was_dead(st.players.size());
    std::vector<FatigueEvent> fresh;
    for (std::size_t i = 0; i < st.players.size(); ++i) {
        const auto& k = st.players[i];
        double effort = k.mode == SpeedMode::Rest ? 0.0 : k.speed_kmh;
        st.lactate[i] = step_lactate(st.lactate[i], effort, s.lactate, dt);
        was_dead[i] = st.batteries[i].dead();
        if (was_dead[i]) continue;
        if (auto ev = check_fatigue(st.monitors[i], st.lactate[i], k.cumulative_distance_km, s.thresholds, t,
                                    k.player_id))
            fresh.push_back(*ev);
    }
    st.events.insert(st.events.end(), fresh.begin(), fresh.end());

    RoundRecord rec;
    rec.round = r;
    auto snap = snapshot(st);
    auto packets = trigger_transmissions(s.protocol, t, fresh, snap, s.radio.packet_bits, st.next_packet_id);
    rec.triggered = static_cast<int>(packets.size());
    for (const auto& pkt : packets) detail::deliver(s, st, pkt, rec);

    for (std::size_t i = 0; i < st.players.size(); ++i) {
        if (!was_dead[i] && st.batteries[i].dead()) st.log.deaths.push_back({st.players[i].player_id, r});
        if (!st.batteries[i].dead()) ++rec.alive;
        rec.residual_quanta += st.batteries[i].residual_quanta();
    }
    st.log.rounds.push_back(std::move(rec));

    if (trace != nullptr)
        for (std::size_t i = 0; i < st.players.size(); ++i) {
            const auto& k = st.players[i];
            trace->push_back({k.player_id, r, k.position.x, k.position.y, k.mode, st.lactate[i]});
        }
}

struct MatchResult {
    ProtocolName protocol = ProtocolName::TheFame;
    std::uint64_t seed = 0;
    MetricsLog log;
    AggregatedFeed feed;
    std::vector<FatigueEvent> events;
    std::vector<PlayerKinematics> players; // final kinematics
    std::vector<Battery> batteries;        // final ledgers
    std::vector<TraceRow> trace;           // filled when requested
};

struct RunOptions {
    bool trace = false;
};

inline MatchResult run_match(const Scenario& s, RunOptions opts = {}) {
    validate(s);
    SimulationState st = initial_state(s);
    MatchResult out;
    while (st.round < s.rounds) {
        run_round(s, st, opts.trace ? &out.trace : nullptr);
        if (st.log.rounds.back().alive == 0 && st.round < s.rounds) {
            st.log.early_stop_round = st.round;
            for (int r = st.round + 1; r <= s.rounds; ++r) {
                RoundRecord idle;
                idle.round = r;
                st.log.rounds.push_back(idle);
            }
            break;
        }
    }
    for (auto& stream : st.per_sink) std::stable_sort(stream.begin(), stream.end(), delivered_before);
    out.protocol = s.protocol.name;
    out.seed = s.seed;
    out.feed = aggregate(st.per_sink);
    out.log = std::move(st.log);
    out.events = std::move(st.events);
    out.players = std::move(st.players);
    out.batteries = std::move(st.batteries);
    return out;
}

} // namespace wbasn
