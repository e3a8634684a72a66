#pragma once

#include <functional>

#include "fieldapprox/design.hpp"

namespace fieldapprox {

/// Cell containing a point, with the local coordinate s such that
/// t = cell_lo + (cell_hi - cell_lo) * s coordinatewise.
struct CellLocation {
    std::vector<int> cell;     // per-coordinate cell index
    std::vector<double> local; // s in [0,1]^d
};

// Binary search per coordinate. Interior knot values belong to the
// lower-index cell (local coordinate 1); t_m = 0 belongs to cell 0.
CellLocation locate_cell(const Design& design, std::span<const double> t);

// Barycentric weights of the 2^d cell vertices at local coordinate s:
// w_v = prod_m (s_m if bit m of v else 1 - s_m). Bit m of the vertex
// mask corresponds to coordinate m (LSB = first coordinate).
std::vector<double> vertex_weights(std::span<const double> s);

/// Piecewise multilinear interpolation of values given on the design
/// grid. `vertex_value` maps a global knot multi-index to the value.
double mpli_eval(const Design& design,
                 const std::function<double(std::span<const int>)>& vertex_value,
                 std::span<const double> t);

}  // namespace fieldapprox
