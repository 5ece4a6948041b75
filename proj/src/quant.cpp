#include "wavecast/quant.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace wavecast {

std::int32_t QTable::step(SubbandId id) const {
    if (id.kind == SubbandKind::LL) return ll;
    if (id.level < 1 || id.level > kMaxLevels) throw std::out_of_range("qtable: level out of range");
    return detail[static_cast<std::size_t>(id.level - 1)];
}

bool QTable::lossless() const {
    return ll == 1 && std::all_of(detail.begin(), detail.end(), [](std::int32_t q) { return q == 1; });
}

QTable QTable::parse(const std::string& text, int levels) {
    std::vector<std::int32_t> steps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("qtable: not an integer: '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("qtable: not an integer: '" + item + "'");
        if (v < 1 || v > 0x7fff) throw std::invalid_argument("qtable: steps must be in [1, 32767]");
        steps.push_back(static_cast<std::int32_t>(v));
    }
    if (steps.size() != static_cast<std::size_t>(levels) + 1)
        throw std::invalid_argument("qtable: expected " + std::to_string(levels + 1) + " steps (qLL then coarse to fine)");
    QTable t;
    t.ll = steps[0];
    for (int level = levels; level >= 1; --level) t.detail[level - 1] = steps[static_cast<std::size_t>(levels - level + 1)];
    return t;
}

std::string QTable::format(int levels) const {
    std::string out = std::to_string(ll);
    for (int level = levels; level >= 1; --level) out += "," + std::to_string(detail[level - 1]);
    return out;
}

std::int32_t quantize_value(std::int32_t c, std::int32_t q) {
    if (q < 1) throw std::invalid_argument("quantizer step must be >= 1");
    const std::int32_t mag = (std::abs(c) + q / 2) / q;
    return c < 0 ? -mag : mag;
}

namespace {

template <class Fn>
CoeffPyramid map_bands(const CoeffPyramid& p, const QTable& t, Fn fn) {
    CoeffPyramid out = p;
    for (auto& band : out.subbands) {
        const std::int32_t q = t.step(band.id);
        if (q == 1) continue;
        for (auto& c : band.coeffs.data) c = fn(c, q);
    }
    return out;
}

}  // namespace

CoeffPyramid quantize(const CoeffPyramid& p, const QTable& t) { return map_bands(p, t, quantize_value); }

CoeffPyramid dequantize(const CoeffPyramid& p, const QTable& t) {
    return map_bands(p, t, [](std::int32_t i, std::int32_t q) { return dequantize_value(i, q); });
}

}  // namespace wavecast
