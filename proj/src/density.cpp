#include "fieldapprox/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fieldapprox {

Density Density::uniform() {
    Density h;
    h.kind_ = Kind::Uniform;
    return h;
}

Density Density::analytic(Fn pdf, Fn cdf) {
    if (!pdf) throw std::invalid_argument("Density::analytic: pdf required");
    Density h;
    h.kind_ = Kind::Analytic;
    h.pdf_ = std::move(pdf);
    h.cdf_ = std::move(cdf);
    h.values_.resize(kTableSize);
    for (int i = 0; i < kTableSize; ++i) {
        double t = static_cast<double>(i) / (kTableSize - 1);
        double v = h.pdf_(t);
        // zeros at isolated points are fine (e.g. h(t) = 2t); negative mass is not
        if (!(v >= 0.0)) throw std::invalid_argument("Density::analytic: pdf must be nonnegative on [0,1]");
        h.values_[static_cast<size_t>(i)] = v;
    }
    h.build_table();
    if (h.cdf_ && std::abs(h.cdf_(1.0) - 1.0) > 1e-10)
        throw std::invalid_argument("Density::analytic: provided cdf does not reach 1 at t=1");
    return h;
}

Density Density::tabulated(std::vector<double> values) {
    if (values.size() < 64)
        throw std::invalid_argument("Density::tabulated: need at least 64 grid values");
    Density h;
    h.kind_ = Kind::Tabulated;
    for (auto& v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("Density::tabulated: non-finite value");
        v = std::max(v, kFloor);
    }
    // resample onto the internal grid by linear interpolation
    h.values_.resize(kTableSize);
    const int n = static_cast<int>(values.size());
    for (int i = 0; i < kTableSize; ++i) {
        double x = static_cast<double>(i) / (kTableSize - 1) * (n - 1);
        int j = std::min(static_cast<int>(x), n - 2);
        double f = x - j;
        h.values_[static_cast<size_t>(i)] =
            (1.0 - f) * values[static_cast<size_t>(j)] + f * values[static_cast<size_t>(j) + 1];
    }
    h.build_table();
    return h;
}

void Density::build_table() {
    cum_.assign(static_cast<size_t>(kTableSize), 0.0);
    const double dx = 1.0 / (kTableSize - 1);
    for (int i = 1; i < kTableSize; ++i)
        cum_[static_cast<size_t>(i)] = cum_[static_cast<size_t>(i) - 1] +
                                       0.5 * dx * (values_[static_cast<size_t>(i) - 1] + values_[static_cast<size_t>(i)]);
    norm_ = cum_.back();
    if (!(norm_ > 0.0)) throw std::invalid_argument("Density: zero total mass");
    for (auto& c : cum_) c /= norm_;
    cum_.back() = 1.0;
    min_pdf_ = *std::min_element(values_.begin(), values_.end()) / norm_;
}

double Density::pdf(double t) const {
    if (kind_ == Kind::Uniform) return 1.0;
    t = std::clamp(t, 0.0, 1.0);
    if (kind_ == Kind::Analytic) return pdf_(t) / norm_;
    double x = t * (kTableSize - 1);
    int j = std::min(static_cast<int>(x), kTableSize - 2);
    double f = x - j;
    return ((1.0 - f) * values_[static_cast<size_t>(j)] + f * values_[static_cast<size_t>(j) + 1]) / norm_;
}

double Density::cdf(double t) const {
    if (kind_ == Kind::Uniform) return std::clamp(t, 0.0, 1.0);
    t = std::clamp(t, 0.0, 1.0);
    if (cdf_) return cdf_(t);
    double x = t * (kTableSize - 1);
    int j = std::min(static_cast<int>(x), kTableSize - 2);
    double f = x - j;
    return (1.0 - f) * cum_[static_cast<size_t>(j)] + f * cum_[static_cast<size_t>(j) + 1];
}

double Density::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Density::quantile: p outside [0,1]");
    if (kind_ == Kind::Uniform) return p;
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    if (cdf_) {
        // bisection on the exact CDF, Newton-polished with the pdf
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
            double mid = 0.5 * (lo + hi);
            (cdf_(mid) < p ? lo : hi) = mid;
        }
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            double deriv = pdf(t);
            if (deriv <= 0.0) break;
            t = std::clamp(t - (cdf_(t) - p) / deriv, lo, hi);
        }
        return t;
    }
    // table CDF is piecewise linear and strictly increasing
    auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
    int j = std::max(1, static_cast<int>(it - cum_.begin()));
    double c0 = cum_[static_cast<size_t>(j) - 1], c1 = cum_[static_cast<size_t>(j)];
    double f = (p - c0) / (c1 - c0);
    double dx = 1.0 / (kTableSize - 1);
    double t = (j - 1 + f) * dx;
    // bisection refinement against cdf() down to 1e-12
    double lo = (j - 1) * dx, hi = j * dx;
    for (int k = 0; k < 60 && std::abs(cdf(t) - p) > 1e-12; ++k) {
        (cdf(t) < p ? lo : hi) = t;
        t = 0.5 * (lo + hi);
    }
    return t;
}

double Density::min_pdf() const {
    return kind_ == Kind::Uniform ? 1.0 : min_pdf_;
}

std::vector<double> Density::sample(int n) const {
    if (n < 2) throw std::invalid_argument("Density::sample: need n >= 2");
    std::vector<double> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = pdf(static_cast<double>(i) / (n - 1));
    return out;
}

Density density_from_C(const std::function<double(double)>& C, double alpha) {
    if (!C) throw std::invalid_argument("density_from_C: function required");
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("density_from_C: alpha outside (0,2)");
    const double gamma = 1.0 / (1.0 + alpha);
    std::vector<double> vals(static_cast<size_t>(Density::kTableSize));
    for (int i = 0; i < Density::kTableSize; ++i) {
        double t = static_cast<double>(i) / (Density::kTableSize - 1);
        double c = C(t);
        if (!(c >= 0.0)) throw std::invalid_argument("density_from_C: C must be nonnegative on [0,1]");
        vals[static_cast<size_t>(i)] = std::pow(c, gamma);
    }
    return Density::tabulated(std::move(vals));
}

}  // namespace fieldapprox
