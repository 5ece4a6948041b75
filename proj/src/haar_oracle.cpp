#include "wavecast/haar_oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace wavecast::oracle {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void forward_line(std::vector<double>& v) {
    const std::size_t half = v.size() / 2;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < half; ++i) {
        out[i] = (v[2 * i] + v[2 * i + 1]) * kInvSqrt2;
        out[half + i] = (v[2 * i] - v[2 * i + 1]) * kInvSqrt2;
    }
    v.swap(out);
}

void inverse_line(std::vector<double>& v) {
    const std::size_t half = v.size() / 2;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < half; ++i) {
        out[2 * i] = (v[i] + v[half + i]) * kInvSqrt2;
        out[2 * i + 1] = (v[i] - v[half + i]) * kInvSqrt2;
    }
    v.swap(out);
}

template <class Fn>
void rows_pass(RealGrid& g, int rows, int cols, Fn fn) {
    std::vector<double> line(static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) line[c] = g(r, c);
        fn(line);
        for (int c = 0; c < cols; ++c) g(r, c) = line[c];
    }
}

template <class Fn>
void cols_pass(RealGrid& g, int rows, int cols, Fn fn) {
    std::vector<double> line(static_cast<std::size_t>(rows));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) line[r] = g(r, c);
        fn(line);
        for (int r = 0; r < rows; ++r) g(r, c) = line[r];
    }
}

void require_divisible(const RealGrid& g, int levels) {
    if (levels < 1) throw TransformError("levels must be positive");
    const int m = 1 << levels;
    if (g.rows % m != 0 || g.cols % m != 0) throw TransformError("grid dimensions not divisible by 2^levels");
}

}  // namespace

RealGrid forward_normalized(const RealGrid& g) { return forward_normalized_multilevel(g, 1); }

RealGrid inverse_normalized(const RealGrid& g) { return inverse_normalized_multilevel(g, 1); }

RealGrid forward_normalized_multilevel(const RealGrid& g, int levels) {
    require_divisible(g, levels);
    RealGrid out = g;
    for (int level = 0; level < levels; ++level) {
        const int rows = g.rows >> level;
        const int cols = g.cols >> level;
        rows_pass(out, rows, cols, forward_line);
        cols_pass(out, rows, cols, forward_line);
    }
    return out;
}

RealGrid inverse_normalized_multilevel(const RealGrid& g, int levels) {
    require_divisible(g, levels);
    RealGrid out = g;
    for (int level = levels - 1; level >= 0; --level) {
        const int rows = g.rows >> level;
        const int cols = g.cols >> level;
        cols_pass(out, rows, cols, inverse_line);
        rows_pass(out, rows, cols, inverse_line);
    }
    return out;
}

RealGrid haar_matrix(int n, int levels) {
    if (levels < 1 || n % (1 << levels) != 0) throw TransformError("haar_matrix: n not divisible by 2^levels");
    RealGrid m(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[j] = 1.0;
        for (int level = 0; level < levels; ++level) {
            std::vector<double> head(e.begin(), e.begin() + (n >> level));
            forward_line(head);
            std::copy(head.begin(), head.end(), e.begin());
        }
        for (int i = 0; i < n; ++i) m(i, j) = e[i];
    }
    return m;
}

double energy(const RealGrid& g) {
    double sum = 0.0;
    for (const double v : g.data) sum += v * v;
    return sum;
}

}  // namespace wavecast::oracle
