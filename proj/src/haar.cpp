#include "wavecast/haar.hpp"

#include <algorithm>
#include <string>

namespace wavecast {

namespace {

void require_even(std::size_t n, const char* what) {
    if (n % 2 != 0) throw TransformError(std::string(what) + ": length must be even");
}

void check_extent(const CoeffGrid& g, int extent_rows, int extent_cols) {
    if (extent_rows < 0 || extent_cols < 0 || extent_rows > g.rows || extent_cols > g.cols)
        throw TransformError("pass extent exceeds grid");
    if (extent_rows % 2 != 0 || extent_cols % 2 != 0) throw TransformError("pass extent must be even");
}

void check_levels(int block_size, int levels) {
    if (levels < 1 || levels > kMaxLevels) throw TransformError("levels must be in [1, " + std::to_string(kMaxLevels) + "]");
    if (block_size <= 0 || block_size % (1 << levels) != 0)
        throw TransformError("block size " + std::to_string(block_size) + " is not divisible by 2^" +
                             std::to_string(levels));
}

}  // namespace

std::vector<std::int32_t> forward_1d(std::span<const std::int32_t> v) {
    require_even(v.size(), "forward_1d");
    const std::size_t half = v.size() / 2;
    std::vector<std::int32_t> out(v.size());
    for (std::size_t i = 0; i < half; ++i) {
        const auto [s, d] = lift_pair(v[2 * i], v[2 * i + 1]);
        out[i] = s;
        out[half + i] = d;
    }
    return out;
}

std::vector<std::int32_t> inverse_1d(std::span<const std::int32_t> v) {
    require_even(v.size(), "inverse_1d");
    const std::size_t half = v.size() / 2;
    std::vector<std::int32_t> out(v.size());
    for (std::size_t i = 0; i < half; ++i) {
        const auto [a, b] = unlift_pair(v[i], v[half + i]);
        out[2 * i] = a;
        out[2 * i + 1] = b;
    }
    return out;
}

void forward_rows(CoeffGrid& g, int extent_rows, int extent_cols) {
    check_extent(g, extent_rows, extent_cols);
    std::vector<std::int32_t> line(static_cast<std::size_t>(extent_cols));
    for (int r = 0; r < extent_rows; ++r) {
        for (int c = 0; c < extent_cols; ++c) line[c] = g(r, c);
        const auto t = forward_1d(line);
        for (int c = 0; c < extent_cols; ++c) g(r, c) = t[c];
    }
}

void forward_cols(CoeffGrid& g, int extent_rows, int extent_cols) {
    check_extent(g, extent_rows, extent_cols);
    std::vector<std::int32_t> line(static_cast<std::size_t>(extent_rows));
    for (int c = 0; c < extent_cols; ++c) {
        for (int r = 0; r < extent_rows; ++r) line[r] = g(r, c);
        const auto t = forward_1d(line);
        for (int r = 0; r < extent_rows; ++r) g(r, c) = t[r];
    }
}

void inverse_rows(CoeffGrid& g, int extent_rows, int extent_cols) {
    check_extent(g, extent_rows, extent_cols);
    std::vector<std::int32_t> line(static_cast<std::size_t>(extent_cols));
    for (int r = 0; r < extent_rows; ++r) {
        for (int c = 0; c < extent_cols; ++c) line[c] = g(r, c);
        const auto t = inverse_1d(line);
        for (int c = 0; c < extent_cols; ++c) g(r, c) = t[c];
    }
}

void inverse_cols(CoeffGrid& g, int extent_rows, int extent_cols) {
    check_extent(g, extent_rows, extent_cols);
    std::vector<std::int32_t> line(static_cast<std::size_t>(extent_rows));
    for (int c = 0; c < extent_cols; ++c) {
        for (int r = 0; r < extent_rows; ++r) line[r] = g(r, c);
        const auto t = inverse_1d(line);
        for (int r = 0; r < extent_rows; ++r) g(r, c) = t[r];
    }
}

CoeffGrid forward_level_2d(const CoeffGrid& g) {
    if (g.rows % 2 != 0 || g.cols % 2 != 0) throw TransformError("forward_level_2d: odd dimension");
    CoeffGrid out = g;
    forward_rows(out, out.rows, out.cols);
    forward_cols(out, out.rows, out.cols);
    return out;
}

CoeffGrid inverse_level_2d(const CoeffGrid& g) {
    if (g.rows % 2 != 0 || g.cols % 2 != 0) throw TransformError("inverse_level_2d: odd dimension");
    CoeffGrid out = g;
    inverse_cols(out, out.rows, out.cols);
    inverse_rows(out, out.rows, out.cols);
    return out;
}

const char* to_string(SubbandKind k) {
    switch (k) {
        case SubbandKind::LL: return "LL";
        case SubbandKind::HL: return "HL";
        case SubbandKind::LH: return "LH";
        case SubbandKind::HH: return "HH";
    }
    return "??";
}

std::vector<SubbandId> subband_order(int levels) {
    std::vector<SubbandId> order;
    order.reserve(static_cast<std::size_t>(stage_count(levels)));
    order.push_back({levels, SubbandKind::LL});
    for (int level = levels; level >= 1; --level) {
        order.push_back({level, SubbandKind::HL});
        order.push_back({level, SubbandKind::LH});
        order.push_back({level, SubbandKind::HH});
    }
    return order;
}

CoeffPyramid CoeffPyramid::zeros(std::size_t block_index, int block_size, int levels) {
    check_levels(block_size, levels);
    CoeffPyramid p;
    p.block_index = block_index;
    p.block_size = block_size;
    p.levels = levels;
    for (const auto id : subband_order(levels)) {
        const int side = subband_side(block_size, id.level);
        p.subbands.push_back({id, CoeffGrid(side, side)});
    }
    return p;
}

const Subband* CoeffPyramid::find(SubbandId id) const {
    const auto it = std::find_if(subbands.begin(), subbands.end(), [&](const Subband& s) { return s.id == id; });
    return it == subbands.end() ? nullptr : &*it;
}

const Subband& CoeffPyramid::at(SubbandId id) const {
    const Subband* s = find(id);
    if (s == nullptr)
        throw TransformError(std::string("missing subband ") + to_string(id.kind) + std::to_string(id.level));
    return *s;
}

Subband& CoeffPyramid::at(SubbandId id) {
    return const_cast<Subband&>(std::as_const(*this).at(id));
}

CoeffGrid assemble_layout(const CoeffPyramid& p) {
    check_levels(p.block_size, p.levels);
    CoeffGrid layout(p.block_size, p.block_size);
    for (const auto id : subband_order(p.levels)) {
        const Subband& band = p.at(id);
        const int side = subband_side(p.block_size, id.level);
        if (band.coeffs.rows != side || band.coeffs.cols != side)
            throw TransformError(std::string("subband ") + to_string(id.kind) + std::to_string(id.level) +
                                 " has wrong dimensions");
        const auto rect = band_rect(p.block_size, p.block_size, id);
        const int r0 = rect.row, c0 = rect.col;
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) layout(r0 + r, c0 + c) = band.coeffs(r, c);
    }
    return layout;
}

CoeffPyramid disassemble_layout(const CoeffGrid& layout, std::size_t block_index, int levels) {
    if (layout.rows != layout.cols) throw TransformError("layout must be square");
    CoeffPyramid p = CoeffPyramid::zeros(block_index, layout.rows, levels);
    for (auto& band : p.subbands) {
        const int side = band.coeffs.rows;
        const auto rect = band_rect(p.block_size, p.block_size, band.id);
        const int r0 = rect.row, c0 = rect.col;
        for (int r = 0; r < side; ++r)
            for (int c = 0; c < side; ++c) band.coeffs(r, c) = layout(r0 + r, c0 + c);
    }
    return p;
}

CoeffPyramid forward_multilevel(const Block& block, int levels) {
    check_levels(block.size, levels);
    CoeffGrid g(block.size, block.size);
    g.data.assign(block.samples.begin(), block.samples.end());
    int extent = block.size;
    for (int level = 1; level <= levels; ++level) {
        forward_rows(g, extent, extent);
        forward_cols(g, extent, extent);
        extent /= 2;
    }
    return disassemble_layout(g, block.index, levels);
}

Block inverse_multilevel(const CoeffPyramid& p) {
    CoeffGrid g = assemble_layout(p);
    for (int level = p.levels; level >= 1; --level) {
        const int extent = p.block_size >> (level - 1);
        inverse_cols(g, extent, extent);
        inverse_rows(g, extent, extent);
    }
    Block b;
    b.index = p.block_index;
    b.size = p.block_size;
    b.samples = std::move(g.data);
    return b;
}

}  // namespace wavecast
