#pragma once

#include <optional>
#include <vector>

#include "gshift/graph.hpp"
#include "gshift/mapping.hpp"

namespace gshift {

using Offset = std::vector<long>;

/// ±e_i in `rank` dimensions; `i` is 1-based, `sign` is +1 or -1.
Offset dirac(std::size_t rank, std::size_t i, int sign);

/// v -> v + delta with per-coordinate wrap-around. Always lossless.
Mapping euclidean_on_torus(const Dims& dims, const Offset& delta);
/// v -> v + delta where the result stays on the grid, bottom otherwise.
Mapping euclidean_on_grid(const Dims& dims, const Offset& delta);

struct Contamination {
  Mapping mapping;
  Offset step;
  /// All dimensions >= 5: no other lossless translation extends the seed.
  bool unique;
};

/// Lossless torus translation forced by a single seed arc `seed -> image`
/// (which must be an edge). Built directly as the shift by image - seed.
Contamination contaminate_torus(const Graph& torus, const Dims& dims, Vertex seed, Vertex image);

/// If `m` is a torus shift by a Dirac vector (either sign), that vector.
std::optional<Offset> torus_dirac_offset(const Dims& dims, const Mapping& m);

/// d[D] >= 3 and d[i] >= 2 + 2 prod_{j>i} d[j] for i < D.
bool satisfies_large_grid_assumption(const Dims& dims);

/// Vertices whose i-th coordinate (1-based) equals j (1-based).
std::vector<Vertex> grid_slice(const Dims& dims, std::size_t i, std::size_t j);

}  // namespace gshift
