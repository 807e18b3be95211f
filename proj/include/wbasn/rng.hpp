#pragma once

#include <cstdint>
#include <random>

namespace wbasn {

// Subsystem RNG streams. Each stream is derived from the scenario seed and a
// stream tag so that consuming one never perturbs another.
enum class Stream : std::uint64_t { Mobility = 1, Scheduling = 2, Channel = 3 };

// mt19937_64 with hand-rolled uniform draws: the std distributions are
// implementation-defined, which would break cross-toolchain reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    Rng(std::uint64_t seed, Stream stream) : engine_(mix(seed, static_cast<std::uint64_t>(stream))) {}

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    std::uint64_t next() { return engine_(); }

private:
    // splitmix64 finaliser over (seed, tag)
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

} // namespace wbasn
