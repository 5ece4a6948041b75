#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavecast/haar.hpp"
#include "wavecast/hamming.hpp"
#include "wavecast/pixmap.hpp"
#include "wavecast/quant.hpp"

namespace wavecast {

// Wire layout of one packet (multi-byte fields big-endian):
//
//   off  size  field
//     0     2  magic 0x57 0x43
//     2     1  version (1)
//     3     1  flags, bit0 = payload code is SECDED
//     4     2  image_id
//     6     2  block_index
//     8     1  level (0 = stream preamble)
//     9     1  subband kind, 0=LL 1=HL 2=LH 3=HH
//    10     4  seq
//    14     2  payload_bits
//
// Each of these 16 bytes is sent as one Hamming(12,8) codeword, giving 24
// header bytes on the wire. The body is encode_stream() of the payload bits,
// zero-padded to a whole byte. Data packets use the stream's payload code;
// the preamble body uses the header code since it is what announces the
// payload code.
inline constexpr std::array<std::uint8_t, 2> kMagic{0x57, 0x43};
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::size_t kHeaderBytes = 16;
inline constexpr std::size_t kHeaderWireBytes = kHeaderBytes * 12 / 8;
inline constexpr std::uint8_t kFlagSecded = 0x01;

/// One subband of one block (or the stream preamble when level == 0). The
/// payload holds the pre-FEC data bits, packed MSB-first.
struct Packet {
    std::uint16_t image_id = 0;
    std::uint16_t block_index = 0;
    std::uint8_t level = 0;
    SubbandKind kind = SubbandKind::LL;
    std::uint32_t seq = 0;
    bool secded = false;
    std::uint16_t payload_bits = 0;
    std::vector<std::uint8_t> payload;

    bool is_preamble() const { return level == 0; }

    friend bool operator==(const Packet&, const Packet&) = default;
};

/// Everything the receiver needs before any subband arrives.
struct StreamInfo {
    std::uint16_t image_id = 0;
    int width = 0;
    int height = 0;
    int block_size = 64;
    int levels = kDefaultLevels;
    HammingCode code = HammingCode::secded_8_4();
    QTable qtable;

    int blocks_x() const { return blocks_across(width, block_size); }
    int blocks_y() const { return blocks_across(height, block_size); }
    std::size_t block_count() const { return static_cast<std::size_t>(blocks_x()) * blocks_y(); }

    /// Throws std::invalid_argument when the combination cannot be streamed.
    void validate() const;

    friend bool operator==(const StreamInfo&, const StreamInfo&) = default;
};

enum class PacketErrc {
    truncated,
    header_uncorrectable,
    bad_magic,
    unsupported_version,
    bad_field,
    code_mismatch,
};

class PacketError : public std::runtime_error {
public:
    PacketError(PacketErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    PacketErrc code() const noexcept { return code_; }

private:
    PacketErrc code_;
};

/// Thrown by packetize for values that do not fit the wire fields.
class EncodeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class ReceiveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> serialize_packet(const Packet& p, const HammingCode& code);

/// Per-packet FEC outcome.
struct FecTally {
    DecodeStatus worst;
    std::size_t corrected = 0;
    std::size_t uncorrectable = 0;
};

struct ParsedPacket {
    Packet packet;
    FecTally fec;
    std::size_t wire_bytes = 0;  ///< bytes consumed from the input
};

/// Decodes one packet from the front of `bytes`. Throws PacketError.
ParsedPacket parse_packet(std::span<const std::uint8_t> bytes, const HammingCode& code);

Packet make_preamble(const StreamInfo& info);
StreamInfo read_preamble(const Packet& p);

/// Data packets in coarse-to-fine order: for each subband in subband_order(),
/// that subband of every block in block order. seq counts from 0.
/// Coefficients are 16-bit two's complement, big-endian, row-major.
std::vector<Packet> packetize(std::span<const CoeffPyramid> pyramids, const StreamInfo& info);

/// Preamble followed by every data packet.
std::vector<std::uint8_t> serialize_stream(const StreamInfo& info, std::span<const Packet> packets);

struct ParsedStream {
    StreamInfo info;
    std::vector<ParsedPacket> packets;
    std::size_t rejected = 0;  ///< packets dropped because their header could not be trusted
    std::size_t skipped_bytes = 0;
};

/// Parses a preamble-first stream. Undecodable packets are skipped by
/// rescanning byte by byte for the next header that parses. Throws
/// PacketError when the preamble itself is unreadable.
ParsedStream parse_stream(std::span<const std::uint8_t> bytes);

/// Coefficient grid <-> payload bits.
std::vector<std::uint8_t> encode_coefficients(const CoeffGrid& g);
CoeffGrid decode_coefficients(std::span<const std::uint8_t> payload, int side);

struct Metrics {
    double mse = 0.0;
    double psnr = 0.0;  ///< +inf when mse == 0
    std::size_t packets_received = 0;
    std::size_t bits_corrected = 0;
    std::size_t words_uncorrectable = 0;
};

Metrics compute_metrics(const Image& reference, const Image& candidate);

/// Receiver-side reassembly. Absent subbands are reconstructed as zeros.
class Receiver {
public:
    explicit Receiver(StreamInfo info);

    /// Stores the subband, overwriting an earlier copy. Throws ReceiveError
    /// for packets that do not belong to this stream.
    void receive(const Packet& p, const FecTally& fec = {});

    Image reconstruct_partial() const;

    bool has(std::size_t block, SubbandId id) const;
    std::size_t subbands_present() const;

    const StreamInfo& info() const { return info_; }
    std::size_t packets_received() const { return packets_received_; }
    std::size_t bits_corrected() const { return bits_corrected_; }
    std::size_t words_uncorrectable() const { return words_uncorrectable_; }
    std::size_t uncorrectable_packets() const { return uncorrectable_packets_; }

private:
    StreamInfo info_;
    std::vector<SubbandId> order_;
    // bands_[block][stage]
    std::vector<std::vector<std::optional<CoeffGrid>>> bands_;
    std::size_t packets_received_ = 0;
    std::size_t bits_corrected_ = 0;
    std::size_t words_uncorrectable_ = 0;
    std::size_t uncorrectable_packets_ = 0;
};

/// Index of a subband in subband_order(levels), or -1.
int stage_index(SubbandId id, int levels);

}  // namespace wavecast
