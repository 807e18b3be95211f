#pragma once

// Radio energy model and battery accounting.
//
// The default `Literal` model scales both the circuitry and the amplifier
// terms with d^2:
//
//   direct:    E_tx  = (e_c + e_a) * k * d^2
//   multi-hop: E_tx  = sum_i (e_c + e_a) * k * d_i^2   (= N (e_c + e_a) k d^2 for equal hops)
//              E_rx  = (N - 1) * (e_c + e_a) * k
//              E_tot = E_tx + E_rx
//
// `FirstOrder` is the textbook e_c * k + e_a * k * d^2 per hop, kept for
// comparison runs only.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace wbasn {

enum class RadioVariant { Literal, FirstOrder };

inline std::string_view to_string(RadioVariant v) { return v == RadioVariant::Literal ? "literal" : "first-order"; }

struct RadioModel {
    double e_circuitry = 50e-9; // J/bit
    double e_amp = 100e-12;     // J/bit/yd^2
    int packet_bits = 1024;
    RadioVariant variant = RadioVariant::Literal;
};

inline void validate(const RadioModel& m) {
    if (!(m.e_circuitry >= 0.0) || !std::isfinite(m.e_circuitry))
        throw ValidationError("energy.e_circuitry", "must be >= 0");
    if (!(m.e_amp >= 0.0) || !std::isfinite(m.e_amp)) throw ValidationError("energy.e_amp", "must be >= 0");
    if (m.packet_bits <= 0) throw ValidationError("energy.packet_bits", "must be > 0");
}

namespace detail {
inline void require_non_negative(double v, const char* what) {
    if (v < 0.0 || std::isnan(v)) throw NegativeInput(std::string(what) + " must be non-negative");
}
} // namespace detail

inline double hop_tx_energy(const RadioModel& m, double bits, double d) {
    if (m.variant == RadioVariant::FirstOrder) return m.e_circuitry * bits + m.e_amp * bits * d * d;
    return (m.e_circuitry + m.e_amp) * bits * d * d;
}

inline double direct_tx_energy(const RadioModel& m, double bits, double d) {
    detail::require_non_negative(bits, "packet size");
    detail::require_non_negative(d, "distance");
    return hop_tx_energy(m, bits, d);
}

inline double multihop_tx_energy(const RadioModel& m, double bits, std::span<const double> hop_distances) {
    detail::require_non_negative(bits, "packet size");
    double total = 0.0;
    for (double d : hop_distances) {
        detail::require_non_negative(d, "hop distance");
        total += hop_tx_energy(m, bits, d);
    }
    return total;
}

// Energy one relay spends receiving a packet.
inline double rx_energy(const RadioModel& m, double bits) {
    if (m.variant == RadioVariant::FirstOrder) return m.e_circuitry * bits;
    return (m.e_circuitry + m.e_amp) * bits;
}

inline double multihop_rx_energy(const RadioModel& m, double bits, int hops) {
    detail::require_non_negative(bits, "packet size");
    if (hops < 1) throw InvalidHopCount("hop count must be >= 1, got " + std::to_string(hops));
    return (hops - 1) * rx_energy(m, bits);
}

inline double multihop_total_energy(const RadioModel& m, double bits, std::span<const double> hop_distances) {
    double tx = multihop_tx_energy(m, bits, hop_distances);
    if (hop_distances.empty()) return tx;
    return tx + multihop_rx_energy(m, bits, static_cast<int>(hop_distances.size()));
}

// Battery ledger kept in integer femtojoules, so residual + spent == initial
// holds exactly over any number of debits.
class Battery {
public:
    using Quanta = std::int64_t;
    static constexpr double quanta_per_joule = 1e15;

    Battery() = default;
    explicit Battery(double initial_j) : initial_(to_quanta(initial_j)), residual_(initial_) {}

    static Quanta to_quanta(double joules) { return static_cast<Quanta>(std::llround(joules * quanta_per_joule)); }
    static double to_joules(Quanta q) { return static_cast<double>(q) / quanta_per_joule; }

    // Debits on a dead battery are no-ops. Returns the quanta actually drawn.
    Quanta debit(double amount_j) {
        detail::require_non_negative(amount_j, "debit");
        if (dead()) return 0;
        Quanta want = to_quanta(amount_j);
        Quanta drawn = want < residual_ ? want : residual_;
        residual_ -= drawn;
        spent_ += drawn;
        return drawn;
    }

    bool dead() const { return residual_ <= 0; }
    double initial() const { return to_joules(initial_); }
    double residual() const { return to_joules(residual_); }
    Quanta initial_quanta() const { return initial_; }
    Quanta residual_quanta() const { return residual_; }
    Quanta spent_quanta() const { return spent_; }

private:
    Quanta initial_ = 0;
    Quanta residual_ = 0;
    Quanta spent_ = 0;
};

inline Battery debit(Battery b, double amount_j) {
    b.debit(amount_j);
    return b;
}

} // namespace wbasn
