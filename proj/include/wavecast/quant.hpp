#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wavecast/haar.hpp"

namespace wavecast {

/// Uniform quantizer steps: one for the top LL band, one per detail level.
struct QTable {
    std::int32_t ll = 1;
    std::array<std::int32_t, kMaxLevels> detail{1, 1, 1, 1, 1};  ///< detail[level - 1]

    std::int32_t step(SubbandId id) const;
    bool lossless() const;

    /// "qLL,qL,...,q1", coarse to fine, exactly levels+1 entries.
    static QTable parse(const std::string& text, int levels);
    std::string format(int levels) const;

    friend bool operator==(const QTable&, const QTable&) = default;
};

// Mid-tread, round half away from zero: i = sign(c) * floor((|c| + q/2) / q).
std::int32_t quantize_value(std::int32_t c, std::int32_t q);
constexpr std::int32_t dequantize_value(std::int32_t i, std::int32_t q) { return i * q; }

CoeffPyramid quantize(const CoeffPyramid& p, const QTable& t);
CoeffPyramid dequantize(const CoeffPyramid& p, const QTable& t);

}  // namespace wavecast
