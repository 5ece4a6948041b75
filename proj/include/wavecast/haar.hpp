#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wavecast/grid.hpp"
#include "wavecast/pixmap.hpp"

namespace wavecast {

using CoeffGrid = Grid<std::int32_t>;

class TransformError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultLevels = 3;
inline constexpr int kMaxLevels = 5;

// Integer Haar (S-transform) lifting step.
//   s = floor((a + b) / 2), d = a - b
// and its exact inverse
//   a = s + floor((d + 1) / 2), b = a - d
struct LiftedPair {
    std::int32_t s;
    std::int32_t d;
    friend bool operator==(const LiftedPair&, const LiftedPair&) = default;
};

constexpr std::int32_t floor_half(std::int32_t v) { return v >> 1; }  // arithmetic shift floors

constexpr LiftedPair lift_pair(std::int32_t a, std::int32_t b) { return {floor_half(a + b), a - b}; }

constexpr std::pair<std::int32_t, std::int32_t> unlift_pair(std::int32_t s, std::int32_t d) {
    const std::int32_t a = s + floor_half(d + 1);
    return {a, a - d};
}

/// Averages into the first half, differences into the second half.
std::vector<std::int32_t> forward_1d(std::span<const std::int32_t> v);
std::vector<std::int32_t> inverse_1d(std::span<const std::int32_t> v);

// Single passes over the top-left `extent_rows` x `extent_cols` region of a
// grid, in place. The 2-D level is the row pass followed by the column pass.
void forward_rows(CoeffGrid& g, int extent_rows, int extent_cols);
void forward_cols(CoeffGrid& g, int extent_rows, int extent_cols);
void inverse_rows(CoeffGrid& g, int extent_rows, int extent_cols);
void inverse_cols(CoeffGrid& g, int extent_rows, int extent_cols);

/// One 2-D level. Result quadrants: LL top-left, HL top-right, LH bottom-left,
/// HH bottom-right.
CoeffGrid forward_level_2d(const CoeffGrid& g);
CoeffGrid inverse_level_2d(const CoeffGrid& g);

enum class SubbandKind : std::uint8_t { LL = 0, HL = 1, LH = 2, HH = 3 };

const char* to_string(SubbandKind k);

struct SubbandId {
    int level = 0;  ///< 1 is finest; the LL band lives at the top level only
    SubbandKind kind = SubbandKind::LL;
    friend bool operator==(const SubbandId&, const SubbandId&) = default;
};

struct Subband {
    SubbandId id;
    CoeffGrid coeffs;
    friend bool operator==(const Subband&, const Subband&) = default;
};

/// Subbands in coarse-to-fine order: LL_L, HL_L, LH_L, HH_L, HL_{L-1}, ... HH_1.
std::vector<SubbandId> subband_order(int levels);

/// Number of progressive stages (subbands) for a given depth.
constexpr int stage_count(int levels) { return 3 * levels + 1; }

/// Multilevel coefficient set of one block. Subbands are stored in
/// subband_order(levels).
struct CoeffPyramid {
    std::size_t block_index = 0;
    int block_size = 0;
    int levels = kDefaultLevels;
    std::vector<Subband> subbands;

    /// Pyramid with every subband present and zero-filled.
    static CoeffPyramid zeros(std::size_t block_index, int block_size, int levels);

    Subband& at(SubbandId id);
    const Subband& at(SubbandId id) const;
    const Subband* find(SubbandId id) const;

    friend bool operator==(const CoeffPyramid&, const CoeffPyramid&) = default;
};

/// Side length of subbands at `level` for the given block size.
constexpr int subband_side(int block_size, int level) { return block_size >> level; }

/// Region a subband occupies in the in-place layout of a rows x cols grid.
struct BandRect {
    int row = 0;
    int col = 0;
    int height = 0;
    int width = 0;
};

constexpr BandRect band_rect(int rows, int cols, SubbandId id) {
    const int h = rows >> id.level;
    const int w = cols >> id.level;
    switch (id.kind) {
        case SubbandKind::LL: return {0, 0, h, w};
        case SubbandKind::HL: return {0, w, h, w};
        case SubbandKind::LH: return {h, 0, h, w};
        case SubbandKind::HH: return {h, w, h, w};
    }
    return {};
}

CoeffPyramid forward_multilevel(const Block& block, int levels = kDefaultLevels);
Block inverse_multilevel(const CoeffPyramid& p);

/// Packs the pyramid back into the in-place (Mallat) layout, block_size x block_size.
CoeffGrid assemble_layout(const CoeffPyramid& p);
CoeffPyramid disassemble_layout(const CoeffGrid& layout, std::size_t block_index, int levels);

}  // namespace wavecast
