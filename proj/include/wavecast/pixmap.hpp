#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavecast {

/// 8-bit grayscale image, row-major.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    Image() = default;
    Image(int w, int h, std::uint8_t fill = 0);
    Image(int w, int h, std::vector<std::uint8_t> px);

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const Image&, const Image&) = default;
};

/// Square tile of an image. Samples are signed so that the same storage can
/// carry lossy reconstructions that over/undershoot [0, 255].
struct Block {
    std::size_t index = 0;
    int x = 0;  ///< origin in the source image
    int y = 0;
    int size = 0;
    std::vector<std::int32_t> samples;

    std::int32_t at(int col, int row) const { return samples[static_cast<std::size_t>(row) * size + col]; }
    std::int32_t& at(int col, int row) { return samples[static_cast<std::size_t>(row) * size + col]; }

    friend bool operator==(const Block&, const Block&) = default;
};

enum class PgmErrc {
    bad_magic,
    bad_header,
    unsupported_maxval,
    dimension_overflow,
    truncated,
    bad_pixel,
};

class PgmError : public std::runtime_error {
public:
    PgmError(PgmErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    PgmErrc code() const noexcept { return code_; }

private:
    PgmErrc code_;
};

class BlockError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses a P5 (binary) or P2 (ASCII) graymap with maxval <= 255. Sample
/// values are kept as stored; no rescaling to 255 is done.
Image load_pgm(std::span<const std::uint8_t> bytes);

/// Emits "P5\n<w> <h>\n255\n" followed by the raw pixels.
std::vector<std::uint8_t> save_pgm(const Image& img);

Image read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const Image& img);

/// Smallest multiple a block side must have. Three halvings are needed by the
/// default transform depth.
inline constexpr int kBlockGranularity = 8;

/// Tiles the image in row-major order. Edge tiles are padded by replicating
/// the last row/column.
std::vector<Block> split_blocks(const Image& img, int block_size);

/// Inverse of split_blocks; crops padding and clamps samples to [0, 255].
Image merge_blocks(std::span<const Block> blocks, int width, int height);

inline int blocks_across(int extent, int block_size) { return (extent + block_size - 1) / block_size; }

}  // namespace wavecast
