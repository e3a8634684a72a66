#pragma once

#include <vector>

namespace fieldapprox {

/// Tensor Gauss-Legendre settings used by the IMSE integrator.
///
/// `subdivision` is a per-cell dyadic grading level: level L splits the
/// local interval [0,1] at 2^-L, 2^-(L-1), ..., 1/2, ..., 1-2^-L, which
/// restores fast convergence when the integrand has vertex kinks
/// (smoothness exponents below one).
struct QuadratureSpec {
    int order = 8;        // Gauss-Legendre points per interval
    int subdivision = 0;  // grading level; 0 = single interval
    int scan_per_dim = 5; // interior scan points per cell and dimension (sup norm)
};

struct Rule1D {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

// q-point Gauss-Legendre rule mapped to [0,1]
Rule1D gauss_legendre_01(int q);

// composite rule on [0,1]: q-point Gauss-Legendre on each interval of
// the dyadic grading of the given level
Rule1D graded_rule_01(int q, int level);

}  // namespace fieldapprox
