#pragma once

// Routing strategies.
//
// THE-FAME: a packet is generated per fatigue event and sent in one hop to the
// nearest of six boundary sinks.
//
// WSTM: every alive player reports every 10 s toward the nearer of two sinks
// behind the goals. The holder transmits straight to the sink when it is the
// alive player closest to that sink; otherwise it hands the packet to the alive
// player strictly closer to the sink that minimises the remaining distance.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "physiology.hpp"

namespace wbasn {

enum class ProtocolName { TheFame, Wstm };

inline std::string_view to_string(ProtocolName p) { return p == ProtocolName::TheFame ? "thefame" : "wstm"; }

enum class TriggerKind { Threshold, Periodic };

struct ProtocolConfig {
    ProtocolName name = ProtocolName::TheFame;
    TriggerKind trigger = TriggerKind::Threshold;
    int period_s = 0; // Periodic only
    std::string frequency_label = "13.56 MHz";
    int max_hops = 1;
};

inline ProtocolConfig thefame_config() { return {ProtocolName::TheFame, TriggerKind::Threshold, 0, "13.56 MHz", 1}; }

inline ProtocolConfig wstm_config(int max_hops = 10) {
    return {ProtocolName::Wstm, TriggerKind::Periodic, 10, "2.4 GHz", max_hops};
}

inline ProtocolConfig preset(ProtocolName name) {
    return name == ProtocolName::TheFame ? thefame_config() : wstm_config();
}

// Sink layout that belongs to each protocol.
inline std::vector<Sink> sinks_for(ProtocolName name, const FieldConfig& field) {
    return name == ProtocolName::TheFame ? six_sink_preset(field.placement, field.length, field.width)
                                         : goal_sink_preset(field.length, field.width);
}

inline void validate(const ProtocolConfig& p) {
    if (p.name == ProtocolName::TheFame && p.trigger != TriggerKind::Threshold)
        throw ValidationError("protocol", "thefame requires the threshold trigger");
    if (p.name == ProtocolName::Wstm && (p.trigger != TriggerKind::Periodic || p.period_s != 10))
        throw ValidationError("protocol", "wstm requires a 10 s periodic trigger");
    if (p.max_hops < 1) throw ValidationError("protocol.max_hops", "must be >= 1");
}

// What the router and trigger see of a player at one instant.
struct PlayerSnapshot {
    int id = 0;
    Point position;
    bool alive = true;
    double lactate = 0.0;
    double distance_km = 0.0;
};

struct StatusReport {
    Point position;
    double lactate = 0.0;
    double distance_km = 0.0;

    friend bool operator==(const StatusReport&, const StatusReport&) = default;
};

enum class PacketKind { FatigueEvent, Periodic };

struct Packet {
    std::uint64_t id = 0;
    int origin = 0;
    double created_at = 0.0; // seconds
    int size_bits = 1024;
    PacketKind kind = PacketKind::FatigueEvent;
    std::variant<FatigueEvent, StatusReport> payload;
};

struct NodeRef {
    enum class Kind { Player, Sink };
    Kind kind = Kind::Player;
    int id = 0;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

inline NodeRef player_node(int id) { return {NodeRef::Kind::Player, id}; }
inline NodeRef sink_node(int id) { return {NodeRef::Kind::Sink, id}; }

struct Hop {
    NodeRef from;
    NodeRef to;
    double distance = 0.0;

    friend bool operator==(const Hop&, const Hop&) = default;
};

struct Route {
    std::vector<Hop> hops;

    int hop_count() const { return static_cast<int>(hops.size()); }
    int sink_id() const { return hops.back().to.id; }

    std::vector<double> distances() const {
        std::vector<double> d;
        d.reserve(hops.size());
        for (const auto& h : hops) d.push_back(h.distance);
        return d;
    }

    friend bool operator==(const Route&, const Route&) = default;
};

inline Route thefame_route(const PlayerSnapshot& player, const std::vector<Sink>& sinks) {
    NearestSink target = nearest_sink(player.position, sinks);
    return Route{{Hop{player_node(player.id), sink_node(target.sink_id), target.distance}}};
}

namespace detail {
inline const PlayerSnapshot* find_player(std::span<const PlayerSnapshot> players, int id) {
    for (const auto& p : players)
        if (p.id == id) return &p;
    return nullptr;
}
} // namespace detail

// Greedy geographic forwarding toward the goal sink nearest the origin.
// Returns nullopt (NoRoute) when no strictly-closer relay exists or the route
// would exceed max_hops.
inline std::optional<Route> wstm_route(int origin, std::span<const PlayerSnapshot> players,
                                       const std::vector<Sink>& sinks, int max_hops) {
    const PlayerSnapshot* holder = detail::find_player(players, origin);
    if (holder == nullptr) throw Error("wstm_route: unknown origin player " + std::to_string(origin));
    NearestSink target = nearest_sink(holder->position, sinks);

    Route route;
    while (true) {
        if (route.hop_count() >= max_hops) return std::nullopt;
        double own = distance(holder->position, target.position);

        bool closest = true;
        const PlayerSnapshot* relay = nullptr;
        double relay_left = 0.0;
        for (const auto& p : players) {
            if (!p.alive || p.id == holder->id) continue;
            double left = distance(p.position, target.position);
            if (left <= own) closest = false;
            if (left < own && (relay == nullptr || left < relay_left || (left == relay_left && p.id < relay->id))) {
                relay = &p;
                relay_left = left;
            }
        }

        if (closest) {
            route.hops.push_back({player_node(holder->id), sink_node(target.sink_id), own});
            return route;
        }
        if (relay == nullptr) return std::nullopt;
        route.hops.push_back({player_node(holder->id), player_node(relay->id), distance(holder->position, relay->position)});
        holder = relay;
    }
}

// Packets generated this round. `next_id` is advanced for every packet.
inline std::vector<Packet> trigger_transmissions(const ProtocolConfig& protocol, double t,
                                                 std::span<const FatigueEvent> fatigue_events,
                                                 std::span<const PlayerSnapshot> players, int packet_bits,
                                                 std::uint64_t& next_id) {
    std::vector<Packet> out;
    if (protocol.trigger == TriggerKind::Threshold) {
        for (const auto& ev : fatigue_events) {
            const PlayerSnapshot* p = detail::find_player(players, ev.player_id);
            if (p == nullptr || !p->alive) continue;
            out.push_back({next_id++, ev.player_id, t, packet_bits, PacketKind::FatigueEvent, ev});
        }
        return out;
    }
    auto whole = static_cast<long long>(t);
    if (static_cast<double>(whole) != t || protocol.period_s <= 0 || whole % protocol.period_s != 0) return out;
    for (const auto& p : players) {
        if (!p.alive) continue;
        out.push_back({next_id++, p.id, t, packet_bits, PacketKind::Periodic,
                       StatusReport{p.position, p.lactate, p.distance_km}});
    }
    return out;
}

} // namespace wbasn
