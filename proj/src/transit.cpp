#include "wavecast/transit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wavecast {

namespace {

const HammingCode& header_code() {
    static const HammingCode code = HammingCode::header_12_8();
    return code;
}

const HammingCode& body_code(const Packet& p, const HammingCode& payload_code) {
    return p.is_preamble() ? header_code() : payload_code;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    put_u16(out, v >> 16);
    put_u16(out, v & 0xffff);
}

std::uint32_t get_u16(std::span<const std::uint8_t> b, std::size_t off) {
    return (std::uint32_t{b[off]} << 8) | b[off + 1];
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
    return (get_u16(b, off) << 16) | get_u16(b, off + 2);
}

std::size_t body_wire_bytes(std::size_t payload_bits, const HammingCode& code) {
    return (encoded_length(payload_bits, code) + 7) / 8;
}

std::size_t expected_payload_bits(const StreamInfo& info, int level) {
    const auto side = static_cast<std::size_t>(subband_side(info.block_size, level));
    return side * side * 16;
}

}  // namespace

void StreamInfo::validate() const {
    if (width <= 0 || height <= 0) throw std::invalid_argument("stream: dimensions must be positive");
    if (levels < 1 || levels > kMaxLevels)
        throw std::invalid_argument("stream: levels must be in [1, " + std::to_string(kMaxLevels) + "]");
    if (block_size <= 0 || block_size % kBlockGranularity != 0 || block_size % (1 << levels) != 0)
        throw std::invalid_argument("stream: block size must be a positive multiple of 8 and of 2^levels");
    if (expected_payload_bits(*this, 1) > 0xffff)
        throw std::invalid_argument("stream: block size " + std::to_string(block_size) +
                                    " makes level-1 subbands exceed the 16-bit payload_bits field");
    if (block_count() > 0x10000) throw std::invalid_argument("stream: more blocks than the 16-bit block index allows");
    if (code.k() > 0xff) throw std::invalid_argument("stream: code data length does not fit the preamble");
    if (qtable.ll < 1 || std::any_of(qtable.detail.begin(), qtable.detail.end(), [](auto q) { return q < 1; }))
        throw std::invalid_argument("stream: quantizer steps must be >= 1");
}

std::vector<std::uint8_t> serialize_packet(const Packet& p, const HammingCode& code) {
    if (p.payload.size() != (static_cast<std::size_t>(p.payload_bits) + 7) / 8)
        throw EncodeError("packet payload size does not match payload_bits");

    std::vector<std::uint8_t> header;
    header.reserve(kHeaderBytes);
    header.insert(header.end(), kMagic.begin(), kMagic.end());
    header.push_back(kWireVersion);
    header.push_back(p.secded ? kFlagSecded : 0);
    put_u16(header, p.image_id);
    put_u16(header, p.block_index);
    header.push_back(p.level);
    header.push_back(static_cast<std::uint8_t>(p.kind));
    put_u32(header, p.seq);
    put_u16(header, p.payload_bits);

    BitVec wire;
    wire.reserve(kHeaderBytes * 12);
    for (const auto byte : header) {
        BitVec data;
        append_bits(data, byte, 8);
        const auto cw = encode(data, header_code());
        wire.insert(wire.end(), cw.begin(), cw.end());
    }
    auto out = pack_bits(wire);

    const BitVec payload = unpack_bits(p.payload, p.payload_bits);
    const auto body = pack_bits(encode_stream(payload, body_code(p, code)));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

ParsedPacket parse_packet(std::span<const std::uint8_t> bytes, const HammingCode& code) {
    if (bytes.size() < kHeaderWireBytes) throw PacketError(PacketErrc::truncated, "packet: truncated header");

    const auto header_wire = unpack_bits(bytes.first(kHeaderWireBytes));
    std::vector<std::uint8_t> header(kHeaderBytes);
    FecTally fec;
    for (std::size_t i = 0; i < kHeaderBytes; ++i) {
        const auto res = decode(std::span(header_wire).subspan(i * 12, 12), header_code());
        if (!res.status.ok()) throw PacketError(PacketErrc::header_uncorrectable, "packet: uncorrectable header");
        if (res.status.kind == DecodeStatus::Kind::Corrected) ++fec.corrected;
        fec.worst = worse(fec.worst, res.status);
        header[i] = static_cast<std::uint8_t>(read_bits(res.data, 0, 8));
    }

    if (header[0] != kMagic[0] || header[1] != kMagic[1]) throw PacketError(PacketErrc::bad_magic, "packet: bad magic");
    if (header[2] != kWireVersion)
        throw PacketError(PacketErrc::unsupported_version, "packet: unsupported version " + std::to_string(header[2]));
    if ((header[3] & ~kFlagSecded) != 0) throw PacketError(PacketErrc::bad_field, "packet: unknown flags");

    Packet p;
    p.secded = (header[3] & kFlagSecded) != 0;
    p.image_id = static_cast<std::uint16_t>(get_u16(header, 4));
    p.block_index = static_cast<std::uint16_t>(get_u16(header, 6));
    p.level = header[8];
    if (header[9] > 3) throw PacketError(PacketErrc::bad_field, "packet: bad subband kind");
    p.kind = static_cast<SubbandKind>(header[9]);
    p.seq = get_u32(header, 10);
    p.payload_bits = static_cast<std::uint16_t>(get_u16(header, 14));

    if (p.level > kMaxLevels) throw PacketError(PacketErrc::bad_field, "packet: bad level");
    if (p.is_preamble() && (p.kind != SubbandKind::LL || p.block_index != 0))
        throw PacketError(PacketErrc::bad_field, "packet: malformed preamble header");
    if (!p.is_preamble() && p.secded != code.secded())
        throw PacketError(PacketErrc::code_mismatch, "packet: payload code does not match receiver");

    const HammingCode& bcode = body_code(p, code);
    const std::size_t body_bytes = body_wire_bytes(p.payload_bits, bcode);
    if (bytes.size() - kHeaderWireBytes < body_bytes) throw PacketError(PacketErrc::truncated, "packet: truncated body");

    const auto body_bits = unpack_bits(bytes.subspan(kHeaderWireBytes, body_bytes), encoded_length(p.payload_bits, bcode));
    const auto res = decode_stream(body_bits, bcode, p.payload_bits);
    p.payload = pack_bits(res.bits);

    fec.worst = worse(fec.worst, res.worst);
    fec.corrected += res.corrected;
    fec.uncorrectable += res.uncorrectable;
    return {std::move(p), fec, kHeaderWireBytes + body_bytes};
}

Packet make_preamble(const StreamInfo& info) {
    info.validate();
    std::vector<std::uint8_t> body;
    put_u32(body, static_cast<std::uint32_t>(info.width));
    put_u32(body, static_cast<std::uint32_t>(info.height));
    put_u16(body, static_cast<std::uint32_t>(info.block_size));
    body.push_back(static_cast<std::uint8_t>(info.levels));
    body.push_back(static_cast<std::uint8_t>(info.code.k()));
    body.push_back(info.code.secded() ? 1 : 0);
    put_u16(body, static_cast<std::uint32_t>(info.qtable.ll));
    for (int level = info.levels; level >= 1; --level) put_u16(body, static_cast<std::uint32_t>(info.qtable.detail[level - 1]));

    Packet p;
    p.image_id = info.image_id;
    p.level = 0;
    p.secded = info.code.secded();
    p.payload_bits = static_cast<std::uint16_t>(body.size() * 8);
    p.payload = std::move(body);
    return p;
}

StreamInfo read_preamble(const Packet& p) {
    if (!p.is_preamble()) throw PacketError(PacketErrc::bad_field, "preamble: not a control packet");
    const auto& b = p.payload;
    if (b.size() < 15) throw PacketError(PacketErrc::truncated, "preamble: short body");

    const std::uint32_t width = get_u32(b, 0);
    const std::uint32_t height = get_u32(b, 4);
    const int levels = b[10];
    if (levels < 1 || levels > kMaxLevels) throw PacketError(PacketErrc::bad_field, "preamble: bad levels");
    if (b.size() != 15 + 2 * static_cast<std::size_t>(levels))
        throw PacketError(PacketErrc::bad_field, "preamble: body length does not match levels");
    if (width == 0 || height == 0 || width > 0x7fffffff || height > 0x7fffffff)
        throw PacketError(PacketErrc::bad_field, "preamble: bad dimensions");
    if (b[11] == 0 || b[12] > 1) throw PacketError(PacketErrc::bad_field, "preamble: bad code parameters");

    StreamInfo info{
        .image_id = p.image_id,
        .width = static_cast<int>(width),
        .height = static_cast<int>(height),
        .block_size = static_cast<int>(get_u16(b, 8)),
        .levels = levels,
        .code = HammingCode(b[11], b[12] == 1),
        .qtable = {},
    };
    info.qtable.ll = static_cast<std::int32_t>(get_u16(b, 13));
    for (int i = 0; i < levels; ++i)
        info.qtable.detail[static_cast<std::size_t>(levels - 1 - i)] = static_cast<std::int32_t>(get_u16(b, 15 + 2 * i));
    try {
        info.validate();
    } catch (const std::invalid_argument& e) {
        throw PacketError(PacketErrc::bad_field, std::string("preamble: ") + e.what());
    }
    return info;
}

std::vector<std::uint8_t> encode_coefficients(const CoeffGrid& g) {
    std::vector<std::uint8_t> out;
    out.reserve(g.data.size() * 2);
    for (const auto c : g.data) {
        if (c < std::numeric_limits<std::int16_t>::min() || c > std::numeric_limits<std::int16_t>::max())
            throw EncodeError("coefficient " + std::to_string(c) + " does not fit 16 bits");
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(c)));
    }
    return out;
}

CoeffGrid decode_coefficients(std::span<const std::uint8_t> payload, int side) {
    const auto count = static_cast<std::size_t>(side) * side;
    if (payload.size() != count * 2) throw ReceiveError("payload size does not match subband dimensions");
    CoeffGrid g(side, side);
    for (std::size_t i = 0; i < count; ++i)
        g.data[i] = static_cast<std::int16_t>(static_cast<std::uint16_t>(get_u16(payload, 2 * i)));
    return g;
}

std::vector<Packet> packetize(std::span<const CoeffPyramid> pyramids, const StreamInfo& info) {
    info.validate();
    if (pyramids.size() != info.block_count()) throw EncodeError("pyramid count does not match the stream's block grid");
    for (const auto& p : pyramids)
        if (p.block_size != info.block_size || p.levels != info.levels)
            throw EncodeError("pyramid geometry does not match the stream");

    std::vector<Packet> packets;
    packets.reserve(pyramids.size() * static_cast<std::size_t>(stage_count(info.levels)));
    std::uint32_t seq = 0;
    for (const auto id : subband_order(info.levels)) {
        for (const auto& pyr : pyramids) {
            Packet p;
            p.image_id = info.image_id;
            p.block_index = static_cast<std::uint16_t>(pyr.block_index);
            p.level = static_cast<std::uint8_t>(id.level);
            p.kind = id.kind;
            p.seq = seq++;
            p.secded = info.code.secded();
            p.payload = encode_coefficients(pyr.at(id).coeffs);
            if (p.payload.size() * 8 > 0xffff) throw EncodeError("subband payload exceeds 16-bit payload_bits");
            p.payload_bits = static_cast<std::uint16_t>(p.payload.size() * 8);
            packets.push_back(std::move(p));
        }
    }
    return packets;
}

std::vector<std::uint8_t> serialize_stream(const StreamInfo& info, std::span<const Packet> packets) {
    auto out = serialize_packet(make_preamble(info), info.code);
    for (const auto& p : packets) {
        const auto bytes = serialize_packet(p, info.code);
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

ParsedStream parse_stream(std::span<const std::uint8_t> bytes) {
    ParsedStream out;
    const auto preamble = parse_packet(bytes, HammingCode::secded_8_4());
    out.info = read_preamble(preamble.packet);

    std::size_t pos = preamble.wire_bytes;
    bool resyncing = false;
    while (pos < bytes.size()) {
        try {
            auto parsed = parse_packet(bytes.subspan(pos), out.info.code);
            if (parsed.packet.is_preamble()) throw PacketError(PacketErrc::bad_field, "unexpected preamble");
            pos += parsed.wire_bytes;
            out.packets.push_back(std::move(parsed));
            resyncing = false;
        } catch (const PacketError&) {
            if (!resyncing) ++out.rejected;
            resyncing = true;
            ++pos;
            ++out.skipped_bytes;
        }
    }
    return out;
}

Metrics compute_metrics(const Image& reference, const Image& candidate) {
    if (reference.width != candidate.width || reference.height != candidate.height)
        throw std::invalid_argument("metrics: image dimensions differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
        const double d = static_cast<double>(reference.pixels[i]) - candidate.pixels[i];
        sum += d * d;
    }
    Metrics m;
    m.mse = sum / static_cast<double>(reference.pixels.size());
    m.psnr = m.mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(255.0 * 255.0 / m.mse);
    return m;
}

int stage_index(SubbandId id, int levels) {
    const auto order = subband_order(levels);
    const auto it = std::find(order.begin(), order.end(), id);
    return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

Receiver::Receiver(StreamInfo info) : info_(std::move(info)), order_(subband_order(info_.levels)) {
    info_.validate();
    bands_.assign(info_.block_count(), std::vector<std::optional<CoeffGrid>>(order_.size()));
}

void Receiver::receive(const Packet& p, const FecTally& fec) {
    if (p.image_id != info_.image_id) throw ReceiveError("packet belongs to image " + std::to_string(p.image_id));
    if (p.is_preamble()) throw ReceiveError("preamble is not a subband packet");
    if (p.block_index >= bands_.size()) throw ReceiveError("block index out of range");
    const SubbandId id{p.level, p.kind};
    const int stage = stage_index(id, info_.levels);
    if (stage < 0) throw ReceiveError("subband not part of this pyramid");
    const int side = subband_side(info_.block_size, p.level);
    if (p.payload_bits != expected_payload_bits(info_, p.level)) throw ReceiveError("payload_bits does not match subband");

    bands_[p.block_index][static_cast<std::size_t>(stage)] = decode_coefficients(p.payload, side);
    ++packets_received_;
    bits_corrected_ += fec.corrected;
    words_uncorrectable_ += fec.uncorrectable;
    if (!fec.worst.ok()) ++uncorrectable_packets_;
}

bool Receiver::has(std::size_t block, SubbandId id) const {
    const int stage = stage_index(id, info_.levels);
    return block < bands_.size() && stage >= 0 && bands_[block][static_cast<std::size_t>(stage)].has_value();
}

std::size_t Receiver::subbands_present() const {
    std::size_t n = 0;
    for (const auto& block : bands_)
        n += static_cast<std::size_t>(std::count_if(block.begin(), block.end(), [](const auto& b) { return b.has_value(); }));
    return n;
}

Image Receiver::reconstruct_partial() const {
    std::vector<Block> blocks;
    blocks.reserve(bands_.size());
    for (std::size_t b = 0; b < bands_.size(); ++b) {
        auto pyr = CoeffPyramid::zeros(b, info_.block_size, info_.levels);
        for (std::size_t s = 0; s < order_.size(); ++s)
            if (bands_[b][s]) pyr.at(order_[s]).coeffs = *bands_[b][s];
        blocks.push_back(inverse_multilevel(dequantize(pyr, info_.qtable)));
    }
    return merge_blocks(blocks, info_.width, info_.height);
}

}  // namespace wavecast
