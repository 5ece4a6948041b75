#include <gtest/gtest.h>

#include <random>
#include <string>

#include "support.hpp"
#include "wavecast/pixmap.hpp"

using namespace wavecast;
using wavecast::testing::random_image;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PgmErrc parse_error(const std::string& text) {
    try {
        load_pgm(bytes_of(text));
    } catch (const PgmError& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected a parse error for: " << text;
    return PgmErrc::bad_header;
}

}  // namespace

TEST(Pgm, LoadsAsciiP2) {
    const Image img = load_pgm(bytes_of("P2 2 2 255 0 128 255 64"));
    EXPECT_EQ(img, Image(2, 2, {0, 128, 255, 64}));
}

TEST(Pgm, LoadsBinaryWithComments) {
    auto bytes = bytes_of("P5\n# scanner output\n3 1\n# maxval next\n255\n");
    bytes.insert(bytes.end(), {7, 8, 9});
    EXPECT_EQ(load_pgm(bytes), Image(3, 1, {7, 8, 9}));
}

TEST(Pgm, RejectsWideMaxval) {
    auto bytes = bytes_of("P5\n1 1\n65535\n");
    bytes.insert(bytes.end(), {0, 0});
    try {
        load_pgm(bytes);
        FAIL();
    } catch (const PgmError& e) {
        EXPECT_EQ(e.code(), PgmErrc::unsupported_maxval);
    }
}

TEST(Pgm, DistinctErrors) {
    EXPECT_EQ(parse_error("P6\n1 1\n255\n\x01"), PgmErrc::bad_magic);
    EXPECT_EQ(parse_error(""), PgmErrc::bad_magic);
    EXPECT_EQ(parse_error("P5\nx 1\n255\n"), PgmErrc::bad_header);
    EXPECT_EQ(parse_error("P5\n0 1\n255\n"), PgmErrc::bad_header);
    EXPECT_EQ(parse_error("P5\n4 4\n255\n\x01\x02"), PgmErrc::truncated);
    EXPECT_EQ(parse_error("P2\n2 1\n255\n1"), PgmErrc::truncated);
    EXPECT_EQ(parse_error("P5\n99999999999 99999999999\n255\n"), PgmErrc::dimension_overflow);
    EXPECT_EQ(parse_error("P5\n99999999999999999999999 1\n255\n"), PgmErrc::dimension_overflow);
    EXPECT_EQ(parse_error("P2\n1 1\n15\n16"), PgmErrc::bad_pixel);
}

TEST(Pgm, SmallestImageBytes) {
    const auto out = save_pgm(Image(1, 1, {0}));
    auto expected = bytes_of("P5\n1 1\n255\n");
    expected.push_back(0x00);
    EXPECT_EQ(out, expected);
}

TEST(Pgm, SaveIsDeterministic) {
    std::mt19937 rng(3);
    const Image img = random_image(rng, 17, 9);
    EXPECT_EQ(save_pgm(img), save_pgm(img));
}

TEST(Pgm, RoundTripProperty) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dim(1, 40);
    for (int i = 0; i < 200; ++i) {
        const Image img = random_image(rng, dim(rng), dim(rng));
        const auto bytes = save_pgm(img);
        ASSERT_EQ(load_pgm(bytes), img);
        EXPECT_EQ(save_pgm(load_pgm(bytes)), bytes);
    }
}

TEST(Blocks, ExactTiling) {
    std::mt19937 rng(1);
    const Image img = random_image(rng, 128, 128);
    const auto blocks = split_blocks(img, 64);
    ASSERT_EQ(blocks.size(), 4u);
    const std::pair<int, int> origins[] = {{0, 0}, {64, 0}, {0, 64}, {64, 64}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(blocks[i].index, i);
        EXPECT_EQ(blocks[i].x, origins[i].first);
        EXPECT_EQ(blocks[i].y, origins[i].second);
        EXPECT_EQ(blocks[i].size, 64);
    }
    EXPECT_EQ(blocks[3].at(5, 7), img.at(69, 71));
    EXPECT_EQ(merge_blocks(blocks, 128, 128), img);
}

TEST(Blocks, EdgeReplicationAndCrop) {
    std::mt19937 rng(2);
    const Image img = random_image(rng, 100, 100);
    const auto blocks = split_blocks(img, 64);
    ASSERT_EQ(blocks.size(), 4u);
    const Block& corner = blocks[3];
    // Past the right/bottom edge the last column/row repeats.
    EXPECT_EQ(corner.at(63, 0), img.at(99, 64));
    EXPECT_EQ(corner.at(0, 63), img.at(64, 99));
    EXPECT_EQ(corner.at(63, 63), img.at(99, 99));
    EXPECT_EQ(corner.at(40, 20), img.at(99, 84));
    EXPECT_EQ(merge_blocks(blocks, 100, 100), img);
}

TEST(Blocks, SingleBlockIdentity) {
    std::mt19937 rng(4);
    const Image img = random_image(rng, 8, 8);
    const auto blocks = split_blocks(img, 8);
    ASSERT_EQ(blocks.size(), 1u);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) EXPECT_EQ(blocks[0].at(x, y), img.at(x, y));
}

TEST(Blocks, RejectsBadBlockSize) {
    const Image img(16, 16);
    EXPECT_THROW(split_blocks(img, 12), BlockError);
    EXPECT_THROW(split_blocks(img, 0), BlockError);
    EXPECT_THROW(split_blocks(img, -8), BlockError);
}

TEST(Blocks, MergeClampsOutOfRange) {
    Block b;
    b.size = 8;
    b.samples.assign(64, 100);
    b.samples[0] = -3;
    b.samples[1] = 300;
    const Image img = merge_blocks(std::span(&b, 1), 8, 8);
    EXPECT_EQ(img.at(0, 0), 0);
    EXPECT_EQ(img.at(1, 0), 255);
    EXPECT_EQ(img.at(2, 0), 100);
}

TEST(Blocks, MergeErrors) {
    std::mt19937 rng(5);
    auto blocks = split_blocks(random_image(rng, 16, 16), 8);
    auto missing = blocks;
    missing.erase(missing.begin() + 2);
    EXPECT_THROW(merge_blocks(missing, 16, 16), BlockError);

    auto inconsistent = blocks;
    inconsistent[1].size = 16;
    EXPECT_THROW(merge_blocks(inconsistent, 16, 16), BlockError);
}

TEST(Blocks, SplitMergePropertyAndCount) {
    std::mt19937 rng(6);
    std::uniform_int_distribution<int> dim(1, 150);
    const int sizes[] = {8, 16, 24, 64};
    for (int i = 0; i < 100; ++i) {
        const int w = dim(rng), h = dim(rng), s = sizes[i % 4];
        const Image img = random_image(rng, w, h);
        const auto blocks = split_blocks(img, s);
        ASSERT_EQ(blocks.size(), static_cast<std::size_t>(((w + s - 1) / s) * ((h + s - 1) / s)));
        ASSERT_EQ(merge_blocks(blocks, w, h), img);
    }
}
