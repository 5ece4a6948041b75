#include "wavecast/hamming.hpp"

#include <algorithm>

namespace wavecast {

int min_parity_bits(int k) {
    if (k < 1) throw HammingError("data bits must be >= 1");
    int r = 1;
    while ((std::uint64_t{1} << r) < static_cast<std::uint64_t>(k) + r + 1) ++r;
    return r;
}

HammingCode::HammingCode(int data_bits, bool secded)
    : k_(data_bits), r_(min_parity_bits(data_bits)), secded_(secded) {
    for (int pos = 1; pos <= n(); ++pos)
        if (!is_power_of_two(pos)) data_positions_.push_back(pos);
}

HammingCode HammingCode::from_name(const std::string& name) {
    if (name == "hamming-7-4") return hamming_7_4();
    if (name == "secded-8-4") return secded_8_4();
    if (name == "hamming-12-8") return header_12_8();
    throw HammingError("unknown code '" + name + "' (expected secded-8-4 or hamming-7-4)");
}

std::string HammingCode::name() const {
    return std::string(secded_ ? "secded-" : "hamming-") + std::to_string(wire_bits()) + "-" + std::to_string(k_);
}

std::vector<int> HammingCode::parity_positions() const {
    std::vector<int> out;
    for (int i = 0; i < r_; ++i) out.push_back(1 << i);
    return out;
}

const char* to_string(DecodeStatus::Kind k) {
    switch (k) {
        case DecodeStatus::Kind::NoError: return "no-error";
        case DecodeStatus::Kind::Corrected: return "corrected";
        case DecodeStatus::Kind::DetectedUncorrectable: return "uncorrectable";
    }
    return "?";
}

namespace {

void check_length(std::span<const std::uint8_t> cw, const HammingCode& code) {
    if (cw.size() != static_cast<std::size_t>(code.wire_bits()))
        throw HammingError("codeword length " + std::to_string(cw.size()) + " does not match " + code.name());
}

// Parity of the covering set of parity position p: every position j in [1, n]
// with (j & p) != 0.
std::uint8_t covering_parity(std::span<const std::uint8_t> cw, int n, int p) {
    std::uint8_t acc = 0;
    for (int j = p; j <= n; ++j)
        if (j & p) acc ^= cw[static_cast<std::size_t>(j - 1)];
    return acc & 1;
}

unsigned syndrome_unchecked(std::span<const std::uint8_t> cw, const HammingCode& code) {
    unsigned s = 0;
    for (int i = 0; i < code.r(); ++i) {
        const int p = 1 << i;
        if (covering_parity(cw, code.n(), p)) s += static_cast<unsigned>(p);
    }
    return s;
}

void encode_into(std::span<const std::uint8_t> data, const HammingCode& code, std::span<std::uint8_t> out) {
    std::fill(out.begin(), out.end(), 0);
    const auto& dpos = code.data_positions();
    for (std::size_t i = 0; i < dpos.size(); ++i) out[static_cast<std::size_t>(dpos[i] - 1)] = data[i] & 1;
    // Parity positions are still zero, so each covering parity equals the
    // parity bit required to make the set even.
    for (int i = 0; i < code.r(); ++i) {
        const int p = 1 << i;
        out[static_cast<std::size_t>(p - 1)] = covering_parity(out, code.n(), p);
    }
    if (code.secded()) {
        std::uint8_t overall = 0;
        for (int j = 0; j < code.n(); ++j) overall ^= out[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(code.n())] = overall;
    }
}

// Corrects `cw` in place and writes the data bits to `data`.
DecodeStatus decode_into(std::span<std::uint8_t> cw, const HammingCode& code, std::span<std::uint8_t> data) {
    const unsigned s = syndrome_unchecked(cw, code);
    const auto n = static_cast<unsigned>(code.n());
    DecodeStatus status;

    if (!code.secded()) {
        if (s == 0) {
            status = DecodeStatus::no_error();
        } else if (s <= n) {
            cw[s - 1] ^= 1;
            status = DecodeStatus::corrected(static_cast<int>(s));
        } else {
            status = DecodeStatus::uncorrectable();
        }
    } else {
        std::uint8_t overall = 0;
        for (const auto b : cw) overall ^= b;
        overall &= 1;
        if (s == 0 && overall == 0) {
            status = DecodeStatus::no_error();
        } else if (s == 0) {
            cw[n] ^= 1;
            status = DecodeStatus::corrected(static_cast<int>(n + 1));
        } else if (overall == 1 && s <= n) {
            cw[s - 1] ^= 1;
            status = DecodeStatus::corrected(static_cast<int>(s));
        } else {
            status = DecodeStatus::uncorrectable();
        }
    }

    const auto& dpos = code.data_positions();
    for (std::size_t i = 0; i < dpos.size(); ++i) data[i] = cw[static_cast<std::size_t>(dpos[i] - 1)];
    return status;
}

}  // namespace

Codeword encode(std::span<const std::uint8_t> data, const HammingCode& code) {
    if (data.size() != static_cast<std::size_t>(code.k()))
        throw HammingError("data length " + std::to_string(data.size()) + " does not match k=" + std::to_string(code.k()));
    Codeword cw(static_cast<std::size_t>(code.wire_bits()));
    encode_into(data, code, cw);
    return cw;
}

std::vector<int> failing_checks(std::span<const std::uint8_t> cw, const HammingCode& code) {
    check_length(cw, code);
    std::vector<int> out;
    for (const int p : code.parity_positions())
        if (covering_parity(cw, code.n(), p)) out.push_back(p);
    return out;
}

unsigned syndrome(std::span<const std::uint8_t> cw, const HammingCode& code) {
    check_length(cw, code);
    return syndrome_unchecked(cw, code);
}

DecodeResult decode(std::span<const std::uint8_t> cw, const HammingCode& code) {
    check_length(cw, code);
    Codeword work(cw.begin(), cw.end());
    DecodeResult res;
    res.data.resize(static_cast<std::size_t>(code.k()));
    res.status = decode_into(work, code, res.data);
    return res;
}

std::size_t encoded_length(std::size_t payload_bits, const HammingCode& code) {
    const auto k = static_cast<std::size_t>(code.k());
    return (payload_bits + k - 1) / k * static_cast<std::size_t>(code.wire_bits());
}

BitVec encode_stream(std::span<const std::uint8_t> bits, const HammingCode& code) {
    const auto k = static_cast<std::size_t>(code.k());
    const auto w = static_cast<std::size_t>(code.wire_bits());
    BitVec out(encoded_length(bits.size(), code));
    BitVec chunk(k);
    std::size_t word = 0;
    for (std::size_t i = 0; i < bits.size(); i += k, ++word) {
        const std::size_t take = std::min(k, bits.size() - i);
        std::copy_n(bits.begin() + static_cast<std::ptrdiff_t>(i), take, chunk.begin());
        std::fill(chunk.begin() + static_cast<std::ptrdiff_t>(take), chunk.end(), 0);
        encode_into(chunk, code, std::span(out).subspan(word * w, w));
    }
    return out;
}

StreamDecodeResult decode_stream(std::span<const std::uint8_t> bits, const HammingCode& code, std::size_t payload_bits) {
    const auto k = static_cast<std::size_t>(code.k());
    const auto w = static_cast<std::size_t>(code.wire_bits());
    if (bits.size() % w != 0)
        throw HammingError("stream length " + std::to_string(bits.size()) + " is not a multiple of " + std::to_string(w));
    const std::size_t words = bits.size() / w;
    if (payload_bits > words * k) throw HammingError("payload_bits exceeds stream capacity");

    StreamDecodeResult res;
    res.words = words;
    res.bits.resize(words * k);
    BitVec work(w);
    for (std::size_t i = 0; i < words; ++i) {
        std::copy_n(bits.begin() + static_cast<std::ptrdiff_t>(i * w), w, work.begin());
        const DecodeStatus st = decode_into(work, code, std::span(res.bits).subspan(i * k, k));
        if (st.kind == DecodeStatus::Kind::Corrected) ++res.corrected;
        if (st.kind == DecodeStatus::Kind::DetectedUncorrectable) ++res.uncorrectable;
        res.worst = worse(res.worst, st);
    }
    res.bits.resize(payload_bits);
    return res;
}

}  // namespace wavecast
