#pragma once

#include <functional>

#include "fieldapprox/density.hpp"
#include "fieldapprox/design.hpp"
#include "fieldapprox/error.hpp"
#include "fieldapprox/kernels.hpp"

namespace fieldapprox {

// 2/((beta+1)(beta+2)) - 1/6, the scalar single-cell IMSE constant
double a_beta(double beta);

// Squared IMSE of multilinear interpolation of a fractional Brownian
// field over the box [0,u] from its 2^m corners (integral taken in the
// unit local coordinate). Homogeneous of degree beta in u.
double b_const(double beta, int m, std::span<const double> u, const QuadratureSpec& spec = {});

/// Function on [0,1] tabulated on a uniform grid, linear interpolation.
struct TabulatedFunction {
    std::vector<double> values;
    double operator()(double t) const;
};

// C_j: the local variance scale c_j integrated over all coordinates
// except the last coordinate of component j, on a 257-point grid
TabulatedFunction integrated_C(const CovarianceModel& model, int component,
                               const QuadratureSpec& spec = {});

// v_j = int c_j(t) b_{alpha_j,l_j}(H_j(t^j)) dt with H_j = 1/h per
// coordinate. For non-uniform densities b is cached on a 33^{l_j} grid
// in H-space with multilinear interpolation; exact_b bypasses the cache.
double v_general(const CovarianceModel& model, const Density& h, int component,
                 const QuadratureSpec& spec = {}, bool exact_b = false);

// scalar-component shortcut: a_alpha * int C(x) h(x)^{-alpha} dx
double v_one_dim(const std::function<double(double)>& C, const Density& h, double alpha);

// upper-bound constant l^{1+alpha/2} (a_alpha + 1/6) int C h^{-alpha}
double w_const(const std::function<double(double)>& C, const Density& h, double alpha, int l);

// (int C^gamma)^{1/gamma}, values floored at 1e-12
double gamma_norm(const std::function<double(double)>& C, double gamma);

/// Rate exponent and constant of the optimal intercomponent allocation.
struct AsymptoticProfile {
    std::vector<double> v;
    double rho = 0.0;    // (sum l_i/alpha_i)^{-1}
    double kappa = 0.0;  // prod v_j^{l_j/alpha_j}
    int k = 0;

    // predicted squared error k * kappa^rho / N^rho at the optimum
    double optimal_bound(double n_total) const;
};

AsymptoticProfile profile(std::vector<double> v, const Smoothness& sm, const Decomposition& dec);

// sum_j v_j / n_j^{alpha_j}
double predicted_imse(std::span<const double> v, const Smoothness& sm, const Allocation& alloc);

/// Constants of the sup-norm bound sqrt(C) sum_j c_j n_j^{-alpha_j/2}
/// with c_j^2 = 2^{-alpha_j} l_j^{1+alpha_j/2} D_j^{alpha_j}.
struct HolderBoundSpec {
    double holder_c = 1.0;  // the Hoelder constant C
    std::vector<double> c;  // per-component constants c_j
};

HolderBoundSpec make_holder_spec(double holder_c, const Smoothness& sm, const Decomposition& dec,
                                 std::span<const double> density_d);

double holder_bound(const HolderBoundSpec& spec, const Smoothness& sm, const Allocation& alloc);

}  // namespace fieldapprox
