#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fieldapprox {

using Point = std::vector<double>;

/// Partition of the d coordinates into k components of sizes l_1..l_k.
/// Coordinates within one component share a smoothness exponent and a
/// knot density.
struct Decomposition {
    std::vector<int> sizes;    // l_j, one per component
    std::vector<int> offsets;  // cumulative sums L_0..L_k, offsets[0] = 0
    int d = 0;
    int k = 0;

    Decomposition() = default;
    explicit Decomposition(std::vector<int> l);

    // component index (0-based) owning coordinate `coord`
    int component_of(int coord) const;

    // view of the coordinates of component j inside a d-vector
    std::span<const double> part(std::span<const double> v, int j) const {
        return v.subspan(static_cast<size_t>(offsets[j]), static_cast<size_t>(sizes[j]));
    }
};

/// Per-component Hoelder exponents, each in (0, 2).
struct Smoothness {
    std::vector<double> alpha;

    Smoothness() = default;
    explicit Smoothness(std::vector<double> a);

    // expanded to one exponent per coordinate
    std::vector<double> per_coordinate(const Decomposition& dec) const;
};

// Euclidean norm of a coordinate block
double component_norm(std::span<const double> v);

// sum_j ||s^j||^{alpha_j} with Euclidean component norms
double alpha_norm(std::span<const double> s, const Decomposition& dec, const Smoothness& sm);

}  // namespace fieldapprox
