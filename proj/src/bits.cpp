#include "wavecast/bits.hpp"

#include <stdexcept>

namespace wavecast {

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] & 1) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits > bytes.size() * 8) throw std::out_of_range("unpack_bits: not enough bytes");
    BitVec out(nbits);
    for (std::size_t i = 0; i < nbits; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1;
    return out;
}

void append_bits(BitVec& out, std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b) out.push_back(static_cast<std::uint8_t>((value >> b) & 1));
}

std::uint64_t read_bits(std::span<const std::uint8_t> bits, std::size_t pos, int width) {
    if (pos + static_cast<std::size_t>(width) > bits.size()) throw std::out_of_range("read_bits: past end");
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) v = (v << 1) | (bits[pos + b] & 1);
    return v;
}

}  // namespace wavecast
