#include <gtest/gtest.h>

#include <map>
#include <random>
#include <string>

#include "wavecast/hamming.hpp"

using namespace wavecast;
using Kind = DecodeStatus::Kind;

namespace {

BitVec bits_of(const std::string& s) {
    BitVec out;
    for (const char c : s) out.push_back(c == '1' ? 1 : 0);
    return out;
}

BitVec word_bits(unsigned v, int width) {
    BitVec out;
    append_bits(out, v, width);
    return out;
}

BitVec xor_of(const BitVec& a, const BitVec& b) {
    BitVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
    return out;
}

// Independent oracle: enumerate every n-bit word and keep the ones whose
// covering sets all have even parity.
bool satisfies_all_checks(unsigned word, int n) {
    for (int p = 1; p <= n; p <<= 1) {
        int parity = 0;
        for (int pos = 1; pos <= n; ++pos)
            if ((pos & p) && ((word >> (n - pos)) & 1)) parity ^= 1;
        if (parity) return false;
    }
    return true;
}

// Maps the data bits (read from the non-power-of-two positions) of every
// valid n-bit word to that word.
std::map<BitVec, BitVec> brute_force_codebook(int n) {
    std::map<BitVec, BitVec> book;
    for (unsigned w = 0; w < (1u << n); ++w) {
        if (!satisfies_all_checks(w, n)) continue;
        BitVec candidate = word_bits(w, n);
        BitVec d;
        for (int pos = 1; pos <= n; ++pos)
            if (!is_power_of_two(pos)) d.push_back(candidate[static_cast<std::size_t>(pos - 1)]);
        book.emplace(std::move(d), std::move(candidate));
    }
    return book;
}

}  // namespace

TEST(MinParityBits, Values) {
    EXPECT_EQ(min_parity_bits(7), 4);
    EXPECT_EQ(min_parity_bits(4), 3);
    EXPECT_EQ(min_parity_bits(1), 2);
    EXPECT_EQ(min_parity_bits(8), 4);
    EXPECT_EQ(min_parity_bits(11), 4);
    EXPECT_EQ(min_parity_bits(57), 6);
    EXPECT_THROW(min_parity_bits(0), HammingError);
}

TEST(MinParityBits, MinimalAndMonotone) {
    int prev = 0;
    for (int k = 1; k <= 512; ++k) {
        const int r = min_parity_bits(k);
        EXPECT_GE(1L << r, k + r + 1L);
        EXPECT_LT(1L << (r - 1), k + r);
        EXPECT_GE(r, prev);
        prev = r;
    }
}

TEST(HammingCode, Layout) {
    const auto c = HammingCode::hamming_7_4();
    EXPECT_EQ(c.n(), 7);
    EXPECT_EQ(c.r(), 3);
    EXPECT_EQ(c.t(), 1);
    EXPECT_EQ(c.parity_positions(), (std::vector<int>{1, 2, 4}));
    EXPECT_EQ(c.data_positions(), (std::vector<int>{3, 5, 6, 7}));
    EXPECT_EQ(HammingCode::secded_8_4().wire_bits(), 8);
    EXPECT_EQ(HammingCode::header_12_8().wire_bits(), 12);
    EXPECT_EQ(HammingCode::from_name("secded-8-4"), HammingCode::secded_8_4());
    EXPECT_EQ(HammingCode::from_name("hamming-7-4").name(), "hamming-7-4");
    EXPECT_THROW(HammingCode::from_name("rs-255-223"), HammingError);
}

TEST(Encode, KnownWords) {
    const auto c = HammingCode::hamming_7_4();
    EXPECT_EQ(encode(bits_of("1011"), c), bits_of("0110011"));
    EXPECT_EQ(encode(bits_of("0000"), c), bits_of("0000000"));
    EXPECT_EQ(encode(bits_of("1111"), c), bits_of("1111111"));
    EXPECT_THROW(encode(bits_of("101"), c), HammingError);
}

TEST(Encode, MatchesBruteForceCodebook) {
    for (const int k : {4, 11}) {
        const HammingCode c(k, false);
        const auto book = brute_force_codebook(c.n());
        ASSERT_EQ(book.size(), 1u << k);
        for (unsigned d = 0; d < (1u << k); ++d) {
            const auto data = word_bits(d, k);
            ASSERT_EQ(encode(data, c), book.at(data)) << k << " " << d;
        }
    }
}

TEST(Encode, SecdedAppendsOverallParity) {
    const auto c = HammingCode::secded_8_4();
    for (unsigned d = 0; d < 16; ++d) {
        const auto cw = encode(word_bits(d, 4), c);
        int ones = 0;
        for (const auto b : cw) ones += b;
        EXPECT_EQ(ones % 2, 0);
    }
}

TEST(Syndrome, FailingChecksSumToPosition) {
    // (15,11): flipping bit 11 fails the checks at 1, 2 and 8.
    const HammingCode c(11, false);
    auto cw = encode(bits_of("10110010110"), c);
    EXPECT_EQ(syndrome(cw, c), 0u);
    EXPECT_TRUE(failing_checks(cw, c).empty());
    cw[10] ^= 1;
    EXPECT_EQ(failing_checks(cw, c), (std::vector<int>{1, 2, 8}));
    EXPECT_EQ(syndrome(cw, c), 11u);
}

TEST(Syndrome, SingleParityBitNamesItself) {
    const auto c = HammingCode::hamming_7_4();
    for (const int p : {1, 2, 4}) {
        auto cw = encode(bits_of("0110"), c);
        cw[static_cast<std::size_t>(p - 1)] ^= 1;
        EXPECT_EQ(failing_checks(cw, c), std::vector<int>{p});
        EXPECT_EQ(decode(cw, c).status, DecodeStatus::corrected(p));
    }
}

TEST(Syndrome, ZeroIffCodeword) {
    for (const int k : {1, 4, 11}) {
        const HammingCode c(k, false);
        const int n = c.n();
        int codewords = 0;
        for (unsigned w = 0; w < (1u << n); ++w) {
            const bool zero = syndrome(word_bits(w, n), c) == 0;
            ASSERT_EQ(zero, satisfies_all_checks(w, n));
            codewords += zero;
        }
        EXPECT_EQ(codewords, 1 << k);
    }
    EXPECT_THROW(syndrome(BitVec(6), HammingCode::hamming_7_4()), HammingError);
}

TEST(Decode, Exhaustive74) {
    const auto c = HammingCode::hamming_7_4();
    for (unsigned d = 0; d < 16; ++d) {
        const auto data = word_bits(d, 4);
        const auto cw = encode(data, c);
        const auto clean = decode(cw, c);
        EXPECT_EQ(clean.data, data);
        EXPECT_EQ(clean.status, DecodeStatus::no_error());
        for (int pos = 1; pos <= 7; ++pos) {
            auto bad = cw;
            bad[static_cast<std::size_t>(pos - 1)] ^= 1;
            EXPECT_EQ(syndrome(bad, c), static_cast<unsigned>(pos));
            const auto res = decode(bad, c);
            EXPECT_EQ(res.data, data);
            EXPECT_EQ(res.status, DecodeStatus::corrected(pos));
        }
    }
}

TEST(Decode, Secded84SingleAndDouble) {
    const auto c = HammingCode::secded_8_4();
    for (unsigned d = 0; d < 16; ++d) {
        const auto data = word_bits(d, 4);
        const auto cw = encode(data, c);
        for (int pos = 1; pos <= 8; ++pos) {
            auto bad = cw;
            bad[static_cast<std::size_t>(pos - 1)] ^= 1;
            const auto res = decode(bad, c);
            EXPECT_EQ(res.data, data);
            EXPECT_EQ(res.status, DecodeStatus::corrected(pos));
        }
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) {
                auto bad = cw;
                bad[static_cast<std::size_t>(i)] ^= 1;
                bad[static_cast<std::size_t>(j)] ^= 1;
                EXPECT_EQ(decode(bad, c).status.kind, Kind::DetectedUncorrectable);
            }
    }
    // bits 2 and 6 of encode(1011)
    auto bad = encode(bits_of("1011"), c);
    bad[1] ^= 1;
    bad[5] ^= 1;
    EXPECT_EQ(decode(bad, c).status, DecodeStatus::uncorrectable());
}

TEST(Decode, PlainHammingMiscorrectsDoubleErrors) {
    // Without the overall parity bit a double error aliases to a single one.
    const auto c = HammingCode::hamming_7_4();
    int miscorrected = 0;
    for (unsigned d = 0; d < 16; ++d) {
        const auto data = word_bits(d, 4);
        const auto cw = encode(data, c);
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) {
                auto bad = cw;
                bad[static_cast<std::size_t>(i)] ^= 1;
                bad[static_cast<std::size_t>(j)] ^= 1;
                const auto res = decode(bad, c);
                if (res.status.kind == Kind::Corrected && res.data != data) ++miscorrected;
            }
    }
    EXPECT_GT(miscorrected, 0);
}

TEST(Decode, ShortenedCodeSyndromeBeyondLength) {
    // (12,8): syndromes 13..15 do not name a position.
    const auto c = HammingCode::header_12_8();
    auto cw = encode(word_bits(0xA5, 8), c);
    cw[0] ^= 1;   // position 1
    cw[11] ^= 1;  // position 12 -> syndrome 13
    EXPECT_EQ(syndrome(cw, c), 13u);
    EXPECT_EQ(decode(cw, c).status, DecodeStatus::uncorrectable());
}

TEST(Linearity, EncodeIsLinear) {
    const auto c = HammingCode::hamming_7_4();
    for (unsigned a = 0; a < 16; ++a)
        for (unsigned b = 0; b < 16; ++b) {
            const auto da = word_bits(a, 4), db = word_bits(b, 4);
            ASSERT_EQ(encode(xor_of(da, db), c), xor_of(encode(da, c), encode(db, c)));
        }
    std::mt19937 rng(51);
    std::bernoulli_distribution coin(0.5);
    for (const int k : {26, 57, 120}) {
        for (const bool secded : {false, true}) {
            const HammingCode big(k, secded);
            for (int i = 0; i < 50; ++i) {
                BitVec da(static_cast<std::size_t>(k)), db(static_cast<std::size_t>(k));
                for (auto& x : da) x = coin(rng);
                for (auto& x : db) x = coin(rng);
                ASSERT_EQ(encode(xor_of(da, db), big), xor_of(encode(da, big), encode(db, big)));
            }
        }
    }
}

TEST(Stream, Lengths) {
    const auto c = HammingCode::hamming_7_4();
    EXPECT_TRUE(encode_stream(BitVec{}, c).empty());
    EXPECT_EQ(encode_stream(BitVec(8, 1), c).size(), 14u);
    EXPECT_EQ(encode_stream(BitVec(9, 1), c).size(), 21u);
    EXPECT_EQ(encoded_length(9, HammingCode::secded_8_4()), 24u);
    EXPECT_THROW(decode_stream(BitVec(13), c, 8), HammingError);
    EXPECT_THROW(decode_stream(BitVec(14), c, 9), HammingError);
}

TEST(Stream, RoundTripAndSingleFlips) {
    std::mt19937 rng(52);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> len(0, 200);
    for (const auto& c : {HammingCode::hamming_7_4(), HammingCode::secded_8_4(), HammingCode::header_12_8()}) {
        for (int i = 0; i < 50; ++i) {
            BitVec bits(static_cast<std::size_t>(len(rng)));
            for (auto& b : bits) b = coin(rng);
            const auto wire = encode_stream(bits, c);
            const auto clean = decode_stream(wire, c, bits.size());
            ASSERT_EQ(clean.bits, bits);
            ASSERT_EQ(clean.worst.kind, Kind::NoError);
            for (std::size_t pos = 0; pos < wire.size(); ++pos) {
                auto bad = wire;
                bad[pos] ^= 1;
                const auto res = decode_stream(bad, c, bits.size());
                ASSERT_EQ(res.bits, bits);
                ASSERT_EQ(res.worst.kind, Kind::Corrected);
                ASSERT_EQ(res.corrected, 1u);
            }
        }
    }
}

TEST(Stream, SecdedDoubleFlipInOneWordIsReported) {
    const auto c = HammingCode::secded_8_4();
    const BitVec bits = bits_of("110100111010");
    auto wire = encode_stream(bits, c);
    wire[9] ^= 1;
    wire[10] ^= 1;  // both in the second codeword
    const auto res = decode_stream(wire, c, bits.size());
    EXPECT_EQ(res.worst.kind, Kind::DetectedUncorrectable);
    EXPECT_EQ(res.uncorrectable, 1u);
    EXPECT_EQ(res.words, 3u);
}

TEST(Stream, WorstStatusOrdering) {
    EXPECT_EQ(worse(DecodeStatus::no_error(), DecodeStatus::corrected(3)).kind, Kind::Corrected);
    EXPECT_EQ(worse(DecodeStatus::uncorrectable(), DecodeStatus::corrected(3)).kind, Kind::DetectedUncorrectable);
    EXPECT_EQ(worse(DecodeStatus::corrected(2), DecodeStatus::no_error()), DecodeStatus::corrected(2));
}
