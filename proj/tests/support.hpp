#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wavecast/pixmap.hpp"

namespace wavecast::testing {

inline std::string data_path(const std::string& name) { return std::string(WAVECAST_TEST_DATA) + "/" + name; }

inline Image random_image(std::mt19937& rng, int w, int h) {
    std::uniform_int_distribution<int> px(0, 255);
    Image img(w, h);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(px(rng));
    return img;
}

inline Block random_block(std::mt19937& rng, int size, int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> px(lo, hi);
    Block b;
    b.size = size;
    b.samples.resize(static_cast<std::size_t>(size) * size);
    for (auto& s : b.samples) s = px(rng);
    return b;
}

inline Image gradient_image(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<std::uint8_t>((x * 255 / (w - 1) + y * 255 / (h - 1)) / 2);
    return img;
}

inline Image checkerboard_image(int w, int h, int cell) {
    Image img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = ((x / cell + y / cell) % 2) ? 255 : 0;
    return img;
}

inline Image constant_image(int w, int h, std::uint8_t v) { return Image(w, h, v); }

}  // namespace wavecast::testing
