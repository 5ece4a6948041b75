#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecast/bits.hpp"

namespace wavecast {

class HammingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Smallest r with 2^r >= k + r + 1.
int min_parity_bits(int k);

constexpr bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

/// Single-error-correcting Hamming code with parity bits at the power-of-two
/// positions 1, 2, 4, ... of a 1-indexed codeword, even parity. With `secded`
/// an overall parity bit is appended at position n + 1.
class HammingCode {
public:
    HammingCode(int data_bits, bool secded);

    static HammingCode hamming_7_4() { return HammingCode(4, false); }
    static HammingCode secded_8_4() { return HammingCode(4, true); }
    /// Per-byte header protection, (12,8).
    static HammingCode header_12_8() { return HammingCode(8, false); }

    /// "hamming-7-4" or "secded-8-4" style name.
    static HammingCode from_name(const std::string& name);
    std::string name() const;

    int k() const { return k_; }
    int r() const { return r_; }
    int n() const { return k_ + r_; }
    int t() const { return 1; }
    bool secded() const { return secded_; }
    /// Bits per codeword on the wire.
    int wire_bits() const { return n() + (secded_ ? 1 : 0); }

    std::vector<int> parity_positions() const;
    const std::vector<int>& data_positions() const { return data_positions_; }

    friend bool operator==(const HammingCode& a, const HammingCode& b) { return a.k_ == b.k_ && a.secded_ == b.secded_; }

private:
    int k_;
    int r_;
    bool secded_;
    std::vector<int> data_positions_;
};

/// Wire bits; element 0 is position 1.
using Codeword = BitVec;

struct DecodeStatus {
    enum class Kind : std::uint8_t { NoError = 0, Corrected = 1, DetectedUncorrectable = 2 };

    Kind kind = Kind::NoError;
    int position = 0;  ///< 1-based corrected position when kind == Corrected

    static DecodeStatus no_error() { return {}; }
    static DecodeStatus corrected(int pos) { return {Kind::Corrected, pos}; }
    static DecodeStatus uncorrectable() { return {Kind::DetectedUncorrectable, 0}; }

    bool ok() const { return kind != Kind::DetectedUncorrectable; }

    friend bool operator==(const DecodeStatus&, const DecodeStatus&) = default;
};

const char* to_string(DecodeStatus::Kind k);

/// Severity order NoError < Corrected < DetectedUncorrectable.
inline DecodeStatus worse(DecodeStatus a, DecodeStatus b) { return b.kind > a.kind ? b : a; }

Codeword encode(std::span<const std::uint8_t> data, const HammingCode& code);

/// Positions of parity bits whose covering set has odd parity.
std::vector<int> failing_checks(std::span<const std::uint8_t> cw, const HammingCode& code);

/// Sum of failing parity positions; 0 for a codeword.
unsigned syndrome(std::span<const std::uint8_t> cw, const HammingCode& code);

struct DecodeResult {
    BitVec data;
    DecodeStatus status;
};

DecodeResult decode(std::span<const std::uint8_t> cw, const HammingCode& code);

/// k-bit chunks, final chunk zero-padded, codewords concatenated.
BitVec encode_stream(std::span<const std::uint8_t> bits, const HammingCode& code);

/// Number of wire bits encode_stream produces for `payload_bits` input bits.
std::size_t encoded_length(std::size_t payload_bits, const HammingCode& code);

struct StreamDecodeResult {
    BitVec bits;
    DecodeStatus worst;
    std::size_t words = 0;
    std::size_t corrected = 0;
    std::size_t uncorrectable = 0;
};

StreamDecodeResult decode_stream(std::span<const std::uint8_t> bits, const HammingCode& code, std::size_t payload_bits);

}  // namespace wavecast
