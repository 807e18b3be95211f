#pragma once

// Scenario files: flat `key = value` lines with dotted section keys.
// `#` starts a comment; blank lines are ignored; every key is optional and
// unknown or repeated keys are rejected.
//
//   protocol = wstm
//   seed = 7
//   channel.drop_probability = 0.3
//   field.placement = paper-literal

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "engine.hpp"
#include "errors.hpp"

namespace wbasn {

namespace detail {

inline std::string_view trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view v, int line, const std::string& key) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ParseError(line, key, "expected a number, got '" + std::string(v) + "'");
    return out;
}

inline long long parse_int(std::string_view v, int line, const std::string& key) {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ParseError(line, key, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

} // namespace detail

inline Scenario parse_scenario_text(std::string_view text) {
    Scenario s;
    std::optional<ProtocolName> protocol;
    std::optional<int> max_hops;
    bool alpha_set = false;
    std::set<std::string> seen;

    using Setter = std::function<void(std::string_view, int, const std::string&)>;
    auto num = [](double& field) -> Setter {
        return [&field](std::string_view v, int line, const std::string& key) {
            field = detail::parse_double(v, line, key);
        };
    };
    auto integer = [](int& field) -> Setter {
        return [&field](std::string_view v, int line, const std::string& key) {
            long long x = detail::parse_int(v, line, key);
            if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) throw ParseError(line, key, "integer out of range");
            field = static_cast<int>(x);
        };
    };

    std::map<std::string, Setter, std::less<>> setters{
        {"seed",
         [&](std::string_view v, int line, const std::string& key) {
             long long x = detail::parse_int(v, line, key);
             if (x < 0) throw ValidationError(key, "must be >= 0");
             s.seed = static_cast<std::uint64_t>(x);
         }},
        {"rounds", integer(s.rounds)},
        {"players", integer(s.players)},
        {"protocol",
         [&](std::string_view v, int line, const std::string& key) {
             if (v == "thefame") protocol = ProtocolName::TheFame;
             else if (v == "wstm") protocol = ProtocolName::Wstm;
             else throw ParseError(line, key, "expected 'thefame' or 'wstm', got '" + std::string(v) + "'");
         }},
        {"protocol.max_hops",
         [&](std::string_view v, int line, const std::string& key) {
             int h = 0;
             integer(h)(v, line, key);
             max_hops = h;
         }},
        {"field.length", num(s.field.length)},
        {"field.width", num(s.field.width)},
        {"field.placement",
         [&](std::string_view v, int line, const std::string& key) {
             if (v == "corrected") s.field.placement = SinkPlacement::Corrected;
             else if (v == "paper-literal") s.field.placement = SinkPlacement::PaperLiteral;
             else throw ParseError(line, key, "expected 'corrected' or 'paper-literal'");
         }},
        {"mobility.v_walk", num(s.mobility.v_walk_kmh)},
        {"mobility.v_run_min", num(s.mobility.v_run_min_kmh)},
        {"mobility.v_run_max", num(s.mobility.v_run_max_kmh)},
        {"mobility.v_sprint", num(s.mobility.v_sprint_kmh)},
        {"mobility.sprint_min", num(s.mobility.sprint_min_s)},
        {"mobility.sprint_max", num(s.mobility.sprint_max_s)},
        {"mobility.sprints_per_match", num(s.mobility.sprints_per_match)},
        {"mobility.match_duration", num(s.mobility.match_duration_s)},
        {"mobility.rest_per_work", num(s.mobility.rest_per_work)},
        {"mobility.run_probability", num(s.mobility.run_probability)},
        {"mobility.episode_min", num(s.mobility.episode_min_s)},
        {"mobility.episode_max", num(s.mobility.episode_max_s)},
        {"mobility.deviation_radius", num(s.mobility.deviation_radius)},
        {"mobility.group_ref_speed", num(s.mobility.group_ref_speed_kmh)},
        {"physiology.l_base", num(s.lactate.l_base)},
        {"physiology.l_threshold", num(s.lactate.l_threshold)},
        {"physiology.v_aerobic", num(s.lactate.v_aerobic_kmh)},
        {"physiology.alpha",
         [&](std::string_view v, int line, const std::string& key) {
             s.lactate.alpha = detail::parse_double(v, line, key);
             alpha_set = true;
         }},
        {"physiology.beta", num(s.lactate.beta)},
        {"physiology.distance_threshold", num(s.thresholds.distance_km)},
        {"physiology.rearm_fraction", num(s.thresholds.rearm_fraction)},
        {"energy.e_circuitry", num(s.radio.e_circuitry)},
        {"energy.e_amp", num(s.radio.e_amp)},
        {"energy.packet_bits", integer(s.radio.packet_bits)},
        {"energy.initial",
         [&](std::string_view v, int line, const std::string& key) {
             s.initial_energy_j = detail::parse_double(v, line, key);
         }},
        {"energy.model",
         [&](std::string_view v, int line, const std::string& key) {
             if (v == "literal") s.radio.variant = RadioVariant::Literal;
             else if (v == "first-order") s.radio.variant = RadioVariant::FirstOrder;
             else throw ParseError(line, key, "expected 'literal' or 'first-order'");
         }},
        {"channel.drop_probability", num(s.channel.drop_probability)},
        {"channel.data_rate", num(s.channel.data_rate_bps)},
        {"channel.per_hop_processing", num(s.channel.per_hop_processing_s)},
        {"channel.signal_speed", num(s.channel.signal_speed)},
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "", "expected 'key = value'");
        std::string key(detail::trim(line.substr(0, eq)));
        std::string_view value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "", "missing key");
        if (value.empty()) throw ParseError(line_no, key, "missing value");
        auto it = setters.find(key);
        if (it == setters.end()) throw ParseError(line_no, key, "unknown key");
        if (!seen.insert(key).second) throw ParseError(line_no, key, "duplicate key");
        it->second(value, line_no, key);
    }

    if (!alpha_set)
        s.lactate.alpha = calibrated_alpha(s.lactate.l_base, s.lactate.l_threshold, s.mobility.v_sprint_kmh,
                                           s.lactate.v_aerobic_kmh, 180.0);
    s.thresholds.lactate = s.lactate.l_threshold;

    ProtocolName name = protocol.value_or(ProtocolName::TheFame);
    s = with_protocol(std::move(s), name);
    if (max_hops) s.protocol.max_hops = name == ProtocolName::Wstm ? *max_hops : s.protocol.max_hops;
    if (max_hops && name == ProtocolName::TheFame && *max_hops != 1)
        throw ValidationError("protocol.max_hops", "thefame is single-hop; only 1 is allowed");

    validate(s);
    return s;
}

inline Scenario parse_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read scenario file '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_scenario_text(buf.str());
}

} // namespace wbasn
