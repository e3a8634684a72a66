#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fieldapprox/types.hpp"

namespace fieldapprox {

/// Positive knot density on [0,1] with an invertible CDF.
///
/// Three variants: uniform, analytic (pdf with optional exact cdf) and
/// tabulated (values on a uniform abscissa grid, at least 64 points).
/// All variants are normalized so that the density integrates to one.
class Density {
public:
    using Fn = std::function<double(double)>;

    static Density uniform();
    static Density analytic(Fn pdf, Fn cdf = {});
    static Density tabulated(std::vector<double> values);

    double pdf(double t) const;
    double cdf(double t) const;

    // t with cdf(t) = p, p in [0,1]
    double quantile(double p) const;

    // minimum of the (normalized) density over [0,1]; D_j = 1/min_pdf()
    double min_pdf() const;

    bool is_uniform() const { return kind_ == Kind::Uniform; }

    // density sampled on a uniform grid of `n` points (serialization aid)
    std::vector<double> sample(int n) const;

    static constexpr int kTableSize = 4097;   // cumulative-trapezoid grid
    static constexpr double kFloor = 1e-9;    // positivity floor for tables

private:
    enum class Kind { Uniform, Analytic, Tabulated };

    Density() = default;
    void build_table();

    Kind kind_ = Kind::Uniform;
    Fn pdf_;
    Fn cdf_;                       // exact CDF when available
    std::vector<double> values_;   // tabulated pdf (normalized), uniform grid
    std::vector<double> cum_;      // table CDF on kTableSize-point grid
    double norm_ = 1.0;            // raw-integral normalization factor
    double min_pdf_ = 1.0;
};

/// Density proportional to C(t)^{1/(1+alpha)}, the within-component
/// density minimizing the asymptotic IMSE constant for scalar components.
Density density_from_C(const std::function<double(double)>& C, double alpha);

}  // namespace fieldapprox
