#pragma once

// Orthonormal floating-point Haar transform: s = (a+b)/sqrt2, d = (a-b)/sqrt2.
// Shares no code with the integer lifting path and serves as its reference in
// tests (energy preservation, orthogonality, truncation error).

#include "wavecast/grid.hpp"
#include "wavecast/haar.hpp"

namespace wavecast::oracle {

using RealGrid = Grid<double>;

/// One level, rows then columns. Both dimensions must be even.
RealGrid forward_normalized(const RealGrid& g);
RealGrid inverse_normalized(const RealGrid& g);

/// Recursive on the LL quadrant; output uses the same layout as the integer
/// transform (see band_rect).
RealGrid forward_normalized_multilevel(const RealGrid& g, int levels);
RealGrid inverse_normalized_multilevel(const RealGrid& g, int levels);

/// n x n matrix of the 1-D multilevel transform; column j is the transform of
/// the j-th unit vector.
RealGrid haar_matrix(int n, int levels);

double energy(const RealGrid& g);

}  // namespace wavecast::oracle
