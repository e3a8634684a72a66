#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fieldapprox/types.hpp"

namespace fieldapprox {

/// Covariance model of a zero-mean random field on [0,1]^d.
///
/// A model bundles the kernel r(t,s) with the declared decomposition,
/// per-component smoothness and (optionally) the local variance scales
/// c_j(t) governing the small-increment behavior
///   E(X(t+s)-X(t))^2 ~ sum_j c_j(t) ||s^j||^{alpha_j}.
class CovarianceModel {
public:
    using KernelFn = std::function<double(std::span<const double>, std::span<const double>)>;
    using ScaleFn = std::function<double(std::span<const double>)>;

    // Fractional Brownian field with variogram ||t-s||_alpha and kernel
    // (||t||_alpha + ||s||_alpha - ||t-s||_alpha) / 2.
    static CovarianceModel fractional_brownian(Decomposition dec, Smoothness sm);

    // The 2-d kernel g(t) g(s) exp(-||t-s||) with g(t) = 1/(||t||^2 + 0.1).
    // Locally stationary with alpha = 1 and c_1(t) = 2 g(t)^2.
    static CovarianceModel scaled_exponential2d();

    // Identically zero field (useful as a degenerate test model).
    static CovarianceModel zero(Decomposition dec, Smoothness sm);

    // User-supplied kernel; local scales are trusted as declared.
    static CovarianceModel custom(std::string name, KernelFn r, Decomposition dec, Smoothness sm,
                                  std::vector<ScaleFn> scale = {});

    double covariance(std::span<const double> t, std::span<const double> s) const;

    // r(t,t) + r(s,s) - 2 r(t,s); throws if the result is below -1e-10
    // relative to the variance scale, clamps smaller negatives to zero.
    double increment_variance(std::span<const double> t, std::span<const double> s) const;

    // E(X(t+delta)-X(t))^2 for stationary-increment models, as a function
    // of the increment alone. Only valid when stationary_increments().
    double variogram(std::span<const double> delta) const;

    bool stationary_increments() const { return stationary_increments_; }
    bool has_local_scale() const { return !scale_.empty(); }
    double local_scale(int component, std::span<const double> t) const;

    const Decomposition& decomposition() const { return dec_; }
    const Smoothness& smoothness() const { return sm_; }
    int dim() const { return dec_.d; }
    const std::string& name() const { return name_; }

private:
    CovarianceModel() = default;

    std::string name_;
    KernelFn r_;
    Decomposition dec_;
    Smoothness sm_;
    std::vector<ScaleFn> scale_;
    bool stationary_increments_ = false;
};

/// Numerical diagnostic for the declared local-stationarity scales:
/// samples increment_variance(t, t+s) / sum_j c_j(t) ||s^j||^{alpha_j}
/// at step ||s|| and reports the worst relative deviation from 1.
struct StationarityCheck {
    double max_rel_deviation = 0.0;
    double step = 0.0;
    int samples = 0;
};

StationarityCheck local_stationarity_check(const CovarianceModel& model, double step = 1e-4,
                                           int grid_per_dim = 4, int directions = 8,
                                           std::uint64_t seed = 20240901u);

}  // namespace fieldapprox
