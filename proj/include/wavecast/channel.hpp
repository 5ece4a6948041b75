#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "wavecast/bits.hpp"

namespace wavecast {

/// Bit-corruption process.
///
/// Randomness comes from std::mt19937_64 seeded with `seed` through its
/// single-value constructor; both the engine and that seeding procedure are
/// fully specified by the C++ standard, so outputs are reproducible across
/// platforms. Each draw x maps to a uniform u = (x >> 11) * 2^-53 in [0, 1).
///
///  - bsc:   for each bit in order, one draw; flip when u < p.
///  - burst: at each position one draw; when u < burst_rate flip burst_len
///           consecutive bits (clamped at the end) and continue after them,
///           otherwise advance one bit.
struct ChannelModel {
    enum class Kind { bsc, burst };

    Kind kind = Kind::bsc;
    double p = 0.0;
    double burst_rate = 0.0;
    int burst_len = 1;
    std::uint64_t seed = 0;

    static ChannelModel noiseless() { return {}; }
    static ChannelModel bsc(double p, std::uint64_t seed) { return {Kind::bsc, p, 0.0, 1, seed}; }
    static ChannelModel burst(double rate, int len, std::uint64_t seed) { return {Kind::burst, 0.0, rate, len, seed}; }

    /// Throws std::invalid_argument on out-of-range parameters.
    void validate() const;
};

/// Uniform [0, 1) variate from one engine draw, as documented above.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BitVec transmit(std::span<const std::uint8_t> bits, const ChannelModel& m);

/// Byte-level convenience: unpacks MSB-first, transmits, repacks.
std::vector<std::uint8_t> transmit_bytes(std::span<const std::uint8_t> bytes, const ChannelModel& m);

}  // namespace wavecast
