#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wavecast {

/// One bit per element, each 0 or 1.
using BitVec = std::vector<std::uint8_t>;

/// MSB-first packing; the tail of the last byte is zero-filled.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);

/// MSB-first unpacking of the first `nbits` bits.
BitVec unpack_bits(std::span<const std::uint8_t> bytes, std::size_t nbits);

inline BitVec unpack_bits(std::span<const std::uint8_t> bytes) { return unpack_bits(bytes, bytes.size() * 8); }

/// Appends the low `width` bits of `value`, most significant first.
void append_bits(BitVec& out, std::uint64_t value, int width);

/// Reads `width` bits starting at `pos`, most significant first.
std::uint64_t read_bits(std::span<const std::uint8_t> bits, std::size_t pos, int width);

}  // namespace wavecast
