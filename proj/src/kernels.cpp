#include "fieldapprox/kernels.hpp"

#include <cmath>
#include <random>

namespace fieldapprox {

namespace {

double euclid(std::span<const double> t) {
    double ss = 0.0;
    for (double x : t) ss += x * x;
    return std::sqrt(ss);
}

double euclid_diff(std::span<const double> t, std::span<const double> s) {
    double ss = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        double d = t[i] - s[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

}  // namespace

CovarianceModel CovarianceModel::fractional_brownian(Decomposition dec, Smoothness sm) {
    if (static_cast<int>(sm.alpha.size()) != dec.k)
        throw std::invalid_argument("fractional_brownian: smoothness/decomposition mismatch");
    CovarianceModel m;
    m.name_ = "fbf";
    m.dec_ = std::move(dec);
    m.sm_ = std::move(sm);
    m.stationary_increments_ = true;
    const Decomposition& d = m.dec_;
    const Smoothness& a = m.sm_;
    m.r_ = [d, a](std::span<const double> t, std::span<const double> s) {
        std::vector<double> diff(t.size());
        for (size_t i = 0; i < t.size(); ++i) diff[i] = t[i] - s[i];
        return 0.5 * (alpha_norm(t, d, a) + alpha_norm(s, d, a) - alpha_norm(diff, d, a));
    };
    for (int j = 0; j < m.dec_.k; ++j)
        m.scale_.emplace_back([](std::span<const double>) { return 1.0; });
    return m;
}

CovarianceModel CovarianceModel::scaled_exponential2d() {
    CovarianceModel m;
    m.name_ = "expquad2d";
    m.dec_ = Decomposition({2});
    m.sm_ = Smoothness({1.0});
    m.stationary_increments_ = false;
    auto g = [](std::span<const double> t) {
        double n = euclid(t);
        return 1.0 / (n * n + 0.1);
    };
    m.r_ = [g](std::span<const double> t, std::span<const double> s) {
        return g(t) * g(s) * std::exp(-euclid_diff(t, s));
    };
    m.scale_.emplace_back([g](std::span<const double> t) {
        double v = g(t);
        return 2.0 * v * v;
    });
    return m;
}

CovarianceModel CovarianceModel::zero(Decomposition dec, Smoothness sm) {
    CovarianceModel m;
    m.name_ = "zero";
    m.dec_ = std::move(dec);
    m.sm_ = std::move(sm);
    m.stationary_increments_ = true;
    m.r_ = [](std::span<const double>, std::span<const double>) { return 0.0; };
    for (int j = 0; j < m.dec_.k; ++j)
        m.scale_.emplace_back([](std::span<const double>) { return 0.0; });
    return m;
}

CovarianceModel CovarianceModel::custom(std::string name, KernelFn r, Decomposition dec, Smoothness sm,
                                        std::vector<ScaleFn> scale) {
    if (!r) throw std::invalid_argument("custom: kernel function required");
    if (!scale.empty() && static_cast<int>(scale.size()) != dec.k)
        throw std::invalid_argument("custom: one local scale per component required");
    CovarianceModel m;
    m.name_ = std::move(name);
    m.r_ = std::move(r);
    m.dec_ = std::move(dec);
    m.sm_ = std::move(sm);
    m.scale_ = std::move(scale);
    return m;
}

double CovarianceModel::covariance(std::span<const double> t, std::span<const double> s) const {
    if (static_cast<int>(t.size()) != dec_.d || static_cast<int>(s.size()) != dec_.d)
        throw std::invalid_argument("covariance: dimension mismatch");
    return r_(t, s);
}

double CovarianceModel::variogram(std::span<const double> delta) const {
    if (!stationary_increments_)
        throw std::logic_error("variogram: model does not have stationary increments");
    if (name_ == "zero") return 0.0;
    return alpha_norm(delta, dec_, sm_);
}

double CovarianceModel::increment_variance(std::span<const double> t, std::span<const double> s) const {
    double rtt = covariance(t, t);
    double rss = covariance(s, s);
    double v = rtt + rss - 2.0 * covariance(t, s);
    double tol = 1e-10 * std::max(1.0, std::max(rtt, rss));
    if (v < -tol) throw std::runtime_error("increment_variance: negative value, kernel is not PSD");
    return v < 0.0 ? 0.0 : v;
}

double CovarianceModel::local_scale(int component, std::span<const double> t) const {
    if (!has_local_scale()) throw std::logic_error("local_scale: none declared for this model");
    if (component < 0 || component >= dec_.k) throw std::out_of_range("local_scale: bad component");
    return scale_[static_cast<size_t>(component)](t);
}

StationarityCheck local_stationarity_check(const CovarianceModel& model, double step, int grid_per_dim,
                                           int directions, std::uint64_t seed) {
    if (!model.has_local_scale())
        throw std::logic_error("local_stationarity_check: model has no declared scales");
    const Decomposition& dec = model.decomposition();
    const Smoothness& sm = model.smoothness();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    StationarityCheck out;
    out.step = step;

    std::vector<int> idx(static_cast<size_t>(dec.d), 0);
    bool done = false;
    std::vector<double> t(static_cast<size_t>(dec.d)), dir(static_cast<size_t>(dec.d)),
        ts(static_cast<size_t>(dec.d));
    while (!done) {
        for (int m = 0; m < dec.d; ++m)
            t[static_cast<size_t>(m)] = (idx[static_cast<size_t>(m)] + 0.5) / grid_per_dim;
        for (int r = 0; r < directions; ++r) {
            for (auto& x : dir) x = gauss(rng);
            double nrm = component_norm(dir);
            if (nrm == 0.0) continue;
            for (size_t i = 0; i < dir.size(); ++i) {
                dir[i] *= step / nrm;
                ts[i] = t[i] + dir[i];
            }
            double denom = 0.0;
            for (int j = 0; j < dec.k; ++j) {
                double cn = component_norm(dec.part(dir, j));
                if (cn > 0.0)
                    denom += model.local_scale(j, t) * std::pow(cn, sm.alpha[static_cast<size_t>(j)]);
            }
            if (denom <= 0.0) continue;
            double ratio = model.increment_variance(t, ts) / denom;
            out.max_rel_deviation = std::max(out.max_rel_deviation, std::abs(ratio - 1.0));
            ++out.samples;
        }
        done = true;
        for (int m = 0; m < dec.d; ++m) {
            if (++idx[static_cast<size_t>(m)] < grid_per_dim) {
                done = false;
                break;
            }
            idx[static_cast<size_t>(m)] = 0;
        }
    }
    return out;
}

}  // namespace fieldapprox
