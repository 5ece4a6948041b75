#include "wavecast/pixmap.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>

namespace wavecast {

namespace {

constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 30;

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    // Reads an unsigned decimal; saturates at uint64 max so callers can
    // report overflow rather than garbage.
    std::uint64_t number(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw PgmError(PgmErrc::truncated, std::string("pgm: missing ") + what);
        if (!std::isdigit(bytes_[pos_])) throw PgmError(PgmErrc::bad_header, std::string("pgm: bad ") + what);
        std::uint64_t v = 0;
        bool saturated = false;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            const std::uint64_t digit = bytes_[pos_] - '0';
            if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) saturated = true;
            if (!saturated) v = v * 10 + digit;
            ++pos_;
        }
        return saturated ? std::numeric_limits<std::uint64_t>::max() : v;
    }

    std::size_t& pos() { return pos_; }
    std::span<const std::uint8_t> bytes() const { return bytes_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

Image::Image(int w, int h, std::uint8_t fill)
    : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
}

Image::Image(int w, int h, std::vector<std::uint8_t> px) : width(w), height(h), pixels(std::move(px)) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
    if (pixels.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
        throw std::invalid_argument("pixel count does not match dimensions");
}

Image load_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        throw PgmError(PgmErrc::bad_magic, "pgm: expected P5 or P2 magic");
    const bool binary = bytes[1] == '5';

    HeaderReader in(bytes);
    in.pos() = 2;
    if (in.pos() < bytes.size() && !std::isspace(bytes[in.pos()]) && bytes[in.pos()] != '#')
        throw PgmError(PgmErrc::bad_magic, "pgm: magic not followed by whitespace");

    const auto w = in.number("width");
    const auto h = in.number("height");
    const auto maxval = in.number("maxval");
    if (w == 0 || h == 0) throw PgmError(PgmErrc::bad_header, "pgm: zero dimension");
    if (w > kMaxPixels || h > kMaxPixels || w * h > kMaxPixels)
        throw PgmError(PgmErrc::dimension_overflow, "pgm: dimensions too large");
    if (maxval == 0) throw PgmError(PgmErrc::bad_header, "pgm: zero maxval");
    if (maxval > 255) throw PgmError(PgmErrc::unsupported_maxval, "pgm: unsupported maxval " + std::to_string(maxval));

    const auto count = static_cast<std::size_t>(w * h);
    std::vector<std::uint8_t> px;
    px.reserve(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (in.pos() >= bytes.size()) throw PgmError(PgmErrc::truncated, "pgm: missing raster");
        if (!std::isspace(bytes[in.pos()])) throw PgmError(PgmErrc::bad_header, "pgm: bad raster separator");
        ++in.pos();
        if (bytes.size() - in.pos() < count) throw PgmError(PgmErrc::truncated, "pgm: truncated raster");
        const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(in.pos());
        px.assign(first, first + static_cast<std::ptrdiff_t>(count));
        if (std::any_of(px.begin(), px.end(), [&](std::uint8_t v) { return v > maxval; }))
            throw PgmError(PgmErrc::bad_pixel, "pgm: sample exceeds maxval");
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = in.number("sample");
            if (v > maxval) throw PgmError(PgmErrc::bad_pixel, "pgm: sample exceeds maxval");
            px.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return Image(static_cast<int>(w), static_cast<int>(h), std::move(px));
}

std::vector<std::uint8_t> save_pgm(const Image& img) {
    const std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

Image read_pgm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

void write_pgm_file(const std::string& path, const Image& img) {
    const auto bytes = save_pgm(img);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot create " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<Block> split_blocks(const Image& img, int block_size) {
    if (block_size <= 0 || block_size % kBlockGranularity != 0)
        throw BlockError("block size must be a positive multiple of " + std::to_string(kBlockGranularity));

    const int nx = blocks_across(img.width, block_size);
    const int ny = blocks_across(img.height, block_size);
    std::vector<Block> blocks;
    blocks.reserve(static_cast<std::size_t>(nx) * ny);

    for (int by = 0; by < ny; ++by) {
        for (int bx = 0; bx < nx; ++bx) {
            Block b;
            b.index = blocks.size();
            b.x = bx * block_size;
            b.y = by * block_size;
            b.size = block_size;
            b.samples.resize(static_cast<std::size_t>(block_size) * block_size);
            for (int r = 0; r < block_size; ++r) {
                const int sy = std::min(b.y + r, img.height - 1);
                for (int c = 0; c < block_size; ++c) {
                    const int sx = std::min(b.x + c, img.width - 1);
                    b.at(c, r) = img.at(sx, sy);
                }
            }
            blocks.push_back(std::move(b));
        }
    }
    return blocks;
}

Image merge_blocks(std::span<const Block> blocks, int width, int height) {
    if (blocks.empty()) throw BlockError("no blocks to merge");
    const int size = blocks.front().size;
    if (size <= 0) throw BlockError("invalid block size");
    const int nx = blocks_across(width, size);
    const int ny = blocks_across(height, size);
    const auto expected = static_cast<std::size_t>(nx) * ny;

    std::vector<const Block*> by_index(expected, nullptr);
    for (const auto& b : blocks) {
        if (b.size != size || b.samples.size() != static_cast<std::size_t>(size) * size)
            throw BlockError("inconsistent block sizes");
        if (b.index >= expected) throw BlockError("block index out of range: " + std::to_string(b.index));
        by_index[b.index] = &b;
    }

    Image img(width, height);
    for (std::size_t i = 0; i < expected; ++i) {
        const Block* b = by_index[i];
        if (b == nullptr) throw BlockError("missing block " + std::to_string(i));
        const int ox = static_cast<int>(i % nx) * size;
        const int oy = static_cast<int>(i / nx) * size;
        for (int r = 0; r < size && oy + r < height; ++r) {
            for (int c = 0; c < size && ox + c < width; ++c) {
                img.at(ox + c, oy + r) = static_cast<std::uint8_t>(std::clamp(b->at(c, r), 0, 255));
            }
        }
    }
    return img;
}

}  // namespace wavecast
