#pragma once

// Blood lactate as a first-order production/clearance model, plus the
// composite fatigue trigger (lactate OR cumulative distance).
//
//   dL/dt = alpha * max(0, v - v_aerobic) - beta * max(0, L - L_base)
//
// stepped with forward Euler. The default alpha makes a sustained 25 km/h
// effort lift L from 1.0 to 2.2 mmol/L in exactly 180 s when beta = 0.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>

#include "errors.hpp"

namespace wbasn {

inline constexpr double calibrated_alpha(double l_base, double l_threshold, double v_peak_kmh,
                                         double v_aerobic_kmh, double onset_s) {
    return (l_threshold - l_base) / (onset_s * (v_peak_kmh - v_aerobic_kmh));
}

struct LactateParams {
    double l_base = 1.0;      // mmol/L
    double l_threshold = 2.2; // mmol/L, upper edge of the normal band
    double v_aerobic_kmh = 12.9;
    double alpha = calibrated_alpha(1.0, 2.2, 25.0, 12.9, 180.0); // mmol/L per s per km/h above v_aerobic
    double beta = 0.005;                                          // 1/s
};

struct FatigueThresholds {
    double lactate = 2.2;      // mmol/L
    double distance_km = 11.0;
    double rearm_fraction = 0.9; // lactate trigger re-arms below this fraction of the threshold
};

inline void validate(const LactateParams& p) {
    if (!(p.l_base >= 0.0)) throw ValidationError("physiology.l_base", "must be >= 0");
    if (!(p.l_base < p.l_threshold)) throw ValidationError("physiology.l_base", "must be < l_threshold");
    if (p.l_threshold < 0.5 || p.l_threshold > 2.2)
        throw ValidationError("physiology.l_threshold", "must lie in the normal band [0.5, 2.2] mmol/L");
    if (!(p.v_aerobic_kmh > 0.0)) throw ValidationError("physiology.v_aerobic", "must be > 0");
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw ValidationError("physiology.alpha", "must be > 0");
    if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw ValidationError("physiology.beta", "must be > 0");
}

inline void validate(const FatigueThresholds& t) {
    if (!(t.lactate > 0.0)) throw ValidationError("physiology.lactate_threshold", "must be > 0");
    if (!(t.distance_km > 0.0)) throw ValidationError("physiology.distance_threshold", "must be > 0");
    if (!(t.rearm_fraction > 0.0 && t.rearm_fraction <= 1.0))
        throw ValidationError("physiology.rearm_fraction", "must lie in (0, 1]");
}

// One Euler step. Never returns a negative concentration.
inline double step_lactate(double lactate, double speed_kmh, const LactateParams& p, double dt) {
    double production = p.alpha * std::max(0.0, speed_kmh - p.v_aerobic_kmh);
    double clearance = p.beta * std::max(0.0, lactate - p.l_base);
    return std::max(0.0, lactate + dt * (production - clearance));
}

enum class FatigueCause { Lactate, Distance };

inline std::string_view to_string(FatigueCause c) { return c == FatigueCause::Lactate ? "lactate" : "distance"; }

struct FatigueEvent {
    int player_id = 0;
    double time_s = 0.0;
    FatigueCause cause = FatigueCause::Lactate;
    double value = 0.0; // mmol/L for lactate, km for distance

    friend bool operator==(const FatigueEvent&, const FatigueEvent&) = default;
};

// Per-player trigger state: the distance trigger fires once per match, the
// lactate trigger re-arms after dropping below the hysteresis level.
struct FatigueMonitor {
    bool lactate_armed = true;
    bool distance_fired = false;
};

inline std::optional<FatigueEvent> check_fatigue(FatigueMonitor& m, double lactate, double cum_distance_km,
                                                 const FatigueThresholds& th, double t, int player_id) {
    if (!m.lactate_armed && lactate < th.rearm_fraction * th.lactate) m.lactate_armed = true;
    if (m.lactate_armed && lactate >= th.lactate) {
        m.lactate_armed = false;
        return FatigueEvent{player_id, t, FatigueCause::Lactate, lactate};
    }
    if (!m.distance_fired && cum_distance_km >= th.distance_km) {
        m.distance_fired = true;
        return FatigueEvent{player_id, t, FatigueCause::Distance, cum_distance_km};
    }
    return std::nullopt;
}

} // namespace wbasn
