#pragma once

#include <cmath>

#include "errors.hpp"
#include "protocol.hpp"
#include "rng.hpp"
#include "units.hpp"

namespace wbasn {

struct ChannelParams {
    double drop_probability = 0.30;
    double data_rate_bps = 250'000.0;
    double per_hop_processing_s = 0.005;
    double signal_speed = units::light_speed_yards_per_s; // yards/s
};

inline void validate(const ChannelParams& c) {
    if (!(c.drop_probability >= 0.0 && c.drop_probability <= 1.0))
        throw ValidationError("channel.drop_probability", "must lie in [0, 1]");
    if (!(c.data_rate_bps > 0.0) || !std::isfinite(c.data_rate_bps))
        throw ValidationError("channel.data_rate", "must be > 0");
    if (!(c.per_hop_processing_s >= 0.0)) throw ValidationError("channel.per_hop_processing", "must be >= 0");
    if (!(c.signal_speed > 0.0)) throw ValidationError("channel.signal_speed", "must be > 0");
}

enum class HopOutcome { Delivered, Dropped };

// Independent Bernoulli loss per hop.
inline HopOutcome transmit_hop(const ChannelParams& c, const Packet&, Rng& rng) {
    return rng.bernoulli(c.drop_probability) ? HopOutcome::Dropped : HopOutcome::Delivered;
}

inline double hop_delay(const ChannelParams& c, double size_bits, double dist) {
    return size_bits / c.data_rate_bps + dist / c.signal_speed + c.per_hop_processing_s;
}

// Sum over hops of serialisation + flight time + processing.
inline double propagation_delay(const ChannelParams& c, const Route& route, double size_bits) {
    double total = 0.0;
    for (const auto& h : route.hops) total += hop_delay(c, size_bits, h.distance);
    return total;
}

} // namespace wbasn
