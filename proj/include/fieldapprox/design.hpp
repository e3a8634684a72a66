#pragma once

#include <cstdint>
#include <vector>

#include "fieldapprox/density.hpp"
#include "fieldapprox/types.hpp"

namespace fieldapprox {

/// Per-component grid sizes; coordinate m of component j carries n_j
/// cells, i.e. n_j + 1 knots.
struct Allocation {
    std::vector<int> n;
};

// number of design points Prod_j (n_j + 1)^{l_j}
long long actual_points(const Allocation& alloc, const Decomposition& dec);

/// Tensor-product sampling grid on [0,1]^d. Coordinates within a
/// component share one knot vector.
class Design {
public:
    Design(Decomposition dec, std::vector<std::vector<double>> component_knots);

    int dim() const { return dec_.d; }
    const Decomposition& decomposition() const { return dec_; }

    // knot vector of coordinate m (a reference into the shared component vector)
    const std::vector<double>& knots(int coord) const;
    const std::vector<double>& component_knots(int component) const;

    // number of cells along coordinate m
    int cells(int coord) const;
    long long total_cells() const;
    long long total_knots() const;
    std::vector<int> cell_counts() const;

    // bounds of the cell with multi-index `idx` (one entry per coordinate)
    void cell_bounds(std::span<const int> idx, std::span<double> lo, std::span<double> hi) const;

    Allocation allocation() const;

private:
    Decomposition dec_;
    std::vector<std::vector<double>> knots_;  // one vector per component
};

// advance a row-major multi-index; returns false after the last one
bool next_multi_index(std::vector<int>& idx, std::span<const int> extents);

// knots t_i with integral of h over [0, t_i] equal to i/n
std::vector<double> knots_from_density(const Density& h, int n);

// cross-regular design from per-component densities and an allocation
Design build_design(const std::vector<Density>& densities, const Allocation& alloc,
                    const Decomposition& dec);

// grid sizes n_j ~ N^{rho/alpha_j} v_j^{1/alpha_j} / kappa^{rho/alpha_j}
// (ceiling), the asymptotically optimal intercomponent allocation
Allocation optimal_allocation(const std::vector<double>& v, const Smoothness& sm,
                              const Decomposition& dec, double target_n);

// rate-only allocations for the Hoelder classes: order 0 uses
// n_j ~ N^{rho0/alpha_j}, order 1 uses n_j ~ N^{rho1/(2+alpha_j)}
Allocation holder_allocation(const Smoothness& sm, const Decomposition& dec, double target_n,
                             int order);

}  // namespace fieldapprox
