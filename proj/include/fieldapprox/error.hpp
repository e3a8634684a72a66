#pragma once

#include <cstdint>

#include "fieldapprox/design.hpp"
#include "fieldapprox/kernels.hpp"
#include "fieldapprox/quadrature.hpp"

namespace fieldapprox {

struct ErrorReport {
    double imse2 = 0.0;           // integrated squared error
    double sup_mse = -1.0;        // scan-grid max pointwise MSE (-1 = not computed)
    long long n_actual = 0;       // design points
    int quad_order = 0;
    std::vector<int> n;           // per-component grid sizes
    std::vector<double> cell_contributions;  // optional, cell-major order
};

// Exact mean squared error of the multilinear interpolant at t:
// r(t,t) - 2 sum_v w_v r(t,t_v) + sum_{v,u} w_v w_u r(t_v,t_u).
double pointwise_mse(const CovarianceModel& model, const Design& design, std::span<const double> t);

// Mean of the pointwise MSE over the box [lo,hi] in local coordinates,
// with the box corners as interpolation knots; one rule per dimension.
double box_mse_mean(const CovarianceModel& model, std::span<const double> lo,
                    std::span<const double> hi, const std::vector<Rule1D>& rules);

// IMSE by tensor Gauss-Legendre quadrature over all design cells.
// Deterministic for a fixed spec, independent of the thread count.
ErrorReport imse(const CovarianceModel& model, const Design& design, const QuadratureSpec& spec = {},
                 bool keep_cells = false, int threads = 1);

// Max pointwise MSE over an interior scan grid per cell (a lower
// estimate of the true sup; knots themselves would report zero).
double sup_mse(const CovarianceModel& model, const Design& design, const QuadratureSpec& spec = {});

struct McResult {
    double estimate = 0.0;
    double std_error = 0.0;
    int paths = 0;
    int eval_points = 0;
};

// Monte-Carlo IMSE oracle: samples Gaussian paths at the design knots
// plus uniform random evaluation points (joint covariance factorization
// with a jitter ladder) and averages the squared interpolation error.
McResult mc_imse(const CovarianceModel& model, const Design& design, int eval_points, int paths,
                 std::uint64_t seed);

}  // namespace fieldapprox
