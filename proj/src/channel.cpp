#include "wavecast/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace wavecast {

void ChannelModel::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("channel: p must be in [0, 1]");
    if (!(burst_rate >= 0.0 && burst_rate <= 1.0)) throw std::invalid_argument("channel: burst rate must be in [0, 1]");
    if (burst_len < 1) throw std::invalid_argument("channel: burst length must be >= 1");
}

BitVec transmit(std::span<const std::uint8_t> bits, const ChannelModel& m) {
    m.validate();
    BitVec out(bits.begin(), bits.end());
    std::mt19937_64 rng(m.seed);

    if (m.kind == ChannelModel::Kind::bsc) {
        for (auto& b : out)
            if (unit_uniform(rng) < m.p) b ^= 1;
        return out;
    }

    std::size_t i = 0;
    while (i < out.size()) {
        if (unit_uniform(rng) < m.burst_rate) {
            const std::size_t end = std::min(out.size(), i + static_cast<std::size_t>(m.burst_len));
            for (; i < end; ++i) out[i] ^= 1;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<std::uint8_t> transmit_bytes(std::span<const std::uint8_t> bytes, const ChannelModel& m) {
    const BitVec noisy = transmit(unpack_bits(bytes), m);
    return pack_bits(noisy);
}

}  // namespace wavecast
