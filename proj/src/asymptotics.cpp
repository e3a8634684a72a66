#include "fieldapprox/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fieldapprox {

namespace {

// composite Gauss-Legendre on [0,1]: 256 panels, 8 points each
double integrate_01(const std::function<double(double)>& f) {
    static const Rule1D base = gauss_legendre_01(8);
    const int panels = 256;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        double lo = static_cast<double>(p) / panels;
        for (size_t i = 0; i < base.nodes.size(); ++i)
            acc += base.weights[i] * f(lo + base.nodes[i] / panels);
    }
    return acc / panels;
}

std::vector<Rule1D> b_rules(double beta, int m, const QuadratureSpec& spec) {
    int level = std::max(spec.subdivision, beta < 1.0 ? 1 : 0);
    Rule1D r = graded_rule_01(spec.order, level);
    return std::vector<Rule1D>(static_cast<size_t>(m), r);
}

}  // namespace

double a_beta(double beta) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("a_beta: beta outside (0,2)");
    return 2.0 / ((beta + 1.0) * (beta + 2.0)) - 1.0 / 6.0;
}

double b_const(double beta, int m, std::span<const double> u, const QuadratureSpec& spec) {
    if (!(beta > 0.0 && beta < 2.0)) throw std::invalid_argument("b_const: beta outside (0,2)");
    if (m < 1 || static_cast<int>(u.size()) != m) throw std::invalid_argument("b_const: bad box");
    for (double x : u)
        if (!(x > 0.0)) throw std::invalid_argument("b_const: box sides must be positive");
    CovarianceModel fbf =
        CovarianceModel::fractional_brownian(Decomposition({m}), Smoothness({beta}));
    std::vector<double> lo(static_cast<size_t>(m), 0.0);
    std::vector<double> hi(u.begin(), u.end());
    return box_mse_mean(fbf, lo, hi, b_rules(beta, m, spec));
}

double TabulatedFunction::operator()(double t) const {
    if (values.size() < 2) throw std::logic_error("TabulatedFunction: empty table");
    t = std::clamp(t, 0.0, 1.0);
    double x = t * (values.size() - 1);
    size_t j = std::min(static_cast<size_t>(x), values.size() - 2);
    double f = x - static_cast<double>(j);
    return (1.0 - f) * values[j] + f * values[j + 1];
}

TabulatedFunction integrated_C(const CovarianceModel& model, int component,
                               const QuadratureSpec& spec) {
    const Decomposition& dec = model.decomposition();
    if (component < 0 || component >= dec.k) throw std::out_of_range("integrated_C: bad component");
    if (!model.has_local_scale())
        throw std::logic_error("integrated_C: model has no local scales");
    const int fixed = dec.offsets[static_cast<size_t>(component) + 1] - 1;  // t_{L_j}
    const int d = dec.d;
    const int grid = 257;
    // composite rule: sharply peaked scales (e.g. 1/(||t||^2 + 0.1)^2) defeat
    // a single Gauss panel
    Rule1D rule;
    {
        Rule1D base = gauss_legendre_01(std::max(8, spec.order));
        const int panels = 32;
        for (int p = 0; p < panels; ++p)
            for (size_t i = 0; i < base.nodes.size(); ++i) {
                rule.nodes.push_back((p + base.nodes[i]) / panels);
                rule.weights.push_back(base.weights[i] / panels);
            }
    }
    TabulatedFunction out;
    out.values.resize(grid);

    std::vector<int> free_coords;
    for (int m = 0; m < d; ++m)
        if (m != fixed) free_coords.push_back(m);
    const int nf = static_cast<int>(free_coords.size());
    std::vector<int> extents(static_cast<size_t>(nf), static_cast<int>(rule.nodes.size()));

    std::vector<double> t(static_cast<size_t>(d));
    for (int g = 0; g < grid; ++g) {
        t[static_cast<size_t>(fixed)] = static_cast<double>(g) / (grid - 1);
        double acc = 0.0;
        if (nf == 0) {
            acc = model.local_scale(component, t);
        } else {
            std::vector<int> idx(static_cast<size_t>(nf), 0);
            do {
                double wq = 1.0;
                for (int m = 0; m < nf; ++m) {
                    int i = idx[static_cast<size_t>(m)];
                    t[static_cast<size_t>(free_coords[static_cast<size_t>(m)])] = rule.nodes[static_cast<size_t>(i)];
                    wq *= rule.weights[static_cast<size_t>(i)];
                }
                acc += wq * model.local_scale(component, t);
            } while (next_multi_index(idx, extents));
        }
        out.values[static_cast<size_t>(g)] = acc;
    }
    return out;
}

double v_general(const CovarianceModel& model, const Density& h, int component,
                 const QuadratureSpec& spec, bool exact_b) {
    const Decomposition& dec = model.decomposition();
    if (component < 0 || component >= dec.k) throw std::out_of_range("v_general: bad component");
    if (!model.has_local_scale()) throw std::logic_error("v_general: model has no local scales");
    const double alpha = model.smoothness().alpha[static_cast<size_t>(component)];
    const int l = dec.sizes[static_cast<size_t>(component)];
    const int d = dec.d;

    // b evaluator over H-space
    std::function<double(std::span<const double>)> b_of_u;
    double b_tilde = 0.0;
    std::vector<double> cache;
    double umin = 0.0, ustep = 0.0;
    const int cache_pts = 33;
    if (h.is_uniform()) {
        std::vector<double> ones(static_cast<size_t>(l), 1.0);
        b_tilde = b_const(alpha, l, ones, spec);
        b_of_u = [b_tilde](std::span<const double>) { return b_tilde; };
    } else if (exact_b) {
        b_of_u = [alpha, l, &spec](std::span<const double> u) { return b_const(alpha, l, u, spec); };
    } else {
        auto samples = h.sample(Density::kTableSize);
        double hmin = *std::min_element(samples.begin(), samples.end());
        double hmax = *std::max_element(samples.begin(), samples.end());
        umin = 1.0 / hmax;
        double umax = 1.0 / hmin;
        if (umax - umin < 1e-12) {
            std::vector<double> uc(static_cast<size_t>(l), umin);
            b_tilde = b_const(alpha, l, uc, spec);
            b_of_u = [b_tilde](std::span<const double>) { return b_tilde; };
        } else {
            ustep = (umax - umin) / (cache_pts - 1);
            long long total = 1;
            for (int i = 0; i < l; ++i) total *= cache_pts;
            cache.resize(static_cast<size_t>(total));
            std::vector<int> idx(static_cast<size_t>(l), 0);
            std::vector<int> ext(static_cast<size_t>(l), cache_pts);
            std::vector<double> u(static_cast<size_t>(l));
            long long lin = 0;
            do {
                for (int i = 0; i < l; ++i)
                    u[static_cast<size_t>(i)] = umin + ustep * idx[static_cast<size_t>(i)];
                cache[static_cast<size_t>(lin++)] = b_const(alpha, l, u, spec);
            } while (next_multi_index(idx, ext));
            b_of_u = [&cache, umin, ustep, l, cache_pts](std::span<const double> u) {
                // multilinear interpolation on the cached grid
                std::vector<int> j(static_cast<size_t>(l));
                std::vector<double> f(static_cast<size_t>(l));
                for (int i = 0; i < l; ++i) {
                    double x = (u[static_cast<size_t>(i)] - umin) / ustep;
                    x = std::clamp(x, 0.0, static_cast<double>(cache_pts - 1));
                    int jj = std::min(static_cast<int>(x), cache_pts - 2);
                    j[static_cast<size_t>(i)] = jj;
                    f[static_cast<size_t>(i)] = x - jj;
                }
                double acc = 0.0;
                for (size_t mask = 0; mask < (static_cast<size_t>(1) << l); ++mask) {
                    double w = 1.0;
                    long long lin2 = 0;
                    for (int i = 0; i < l; ++i) {
                        int bit = static_cast<int>((mask >> i) & 1);
                        w *= bit ? f[static_cast<size_t>(i)] : 1.0 - f[static_cast<size_t>(i)];
                        lin2 = lin2 * cache_pts + (j[static_cast<size_t>(i)] + bit);
                    }
                    acc += w * cache[static_cast<size_t>(lin2)];
                }
                return acc;
            };
        }
    }

    // tensor quadrature of c_j(t) * b(H_j(t^j)) over the cube
    Rule1D rule = gauss_legendre_01(std::max(8, spec.order));
    std::vector<int> ext(static_cast<size_t>(d), static_cast<int>(rule.nodes.size()));
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> t(static_cast<size_t>(d)), u(static_cast<size_t>(l));
    const int off = dec.offsets[static_cast<size_t>(component)];
    double acc = 0.0;
    do {
        double wq = 1.0;
        for (int m = 0; m < d; ++m) {
            int i = idx[static_cast<size_t>(m)];
            t[static_cast<size_t>(m)] = rule.nodes[static_cast<size_t>(i)];
            wq *= rule.weights[static_cast<size_t>(i)];
        }
        for (int i = 0; i < l; ++i) u[static_cast<size_t>(i)] = 1.0 / h.pdf(t[static_cast<size_t>(off + i)]);
        acc += wq * model.local_scale(component, t) * b_of_u(u);
    } while (next_multi_index(idx, ext));
    return acc;
}

double v_one_dim(const std::function<double(double)>& C, const Density& h, double alpha) {
    if (!C) throw std::invalid_argument("v_one_dim: function required");
    return a_beta(alpha) *
           integrate_01([&](double x) { return C(x) * std::pow(h.pdf(x), -alpha); });
}

double w_const(const std::function<double(double)>& C, const Density& h, double alpha, int l) {
    if (!C) throw std::invalid_argument("w_const: function required");
    if (l < 1) throw std::invalid_argument("w_const: l must be >= 1");
    double integral = integrate_01([&](double x) { return C(x) * std::pow(h.pdf(x), -alpha); });
    return std::pow(static_cast<double>(l), 1.0 + alpha / 2.0) * (a_beta(alpha) + 1.0 / 6.0) * integral;
}

double gamma_norm(const std::function<double(double)>& C, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma_norm: gamma must be positive");
    double integral = integrate_01([&](double x) { return std::pow(std::max(C(x), 1e-12), gamma); });
    return std::pow(integral, 1.0 / gamma);
}

double AsymptoticProfile::optimal_bound(double n_total) const {
    return k * std::pow(kappa, rho) / std::pow(n_total, rho);
}

AsymptoticProfile profile(std::vector<double> v, const Smoothness& sm, const Decomposition& dec) {
    if (static_cast<int>(v.size()) != dec.k || static_cast<int>(sm.alpha.size()) != dec.k)
        throw std::invalid_argument("profile: component count mismatch");
    for (double x : v)
        if (!(x > 0.0)) throw std::invalid_argument("profile: v_j must be positive");
    AsymptoticProfile p;
    p.k = dec.k;
    double rho_inv = 0.0, log_kappa = 0.0;
    for (int j = 0; j < dec.k; ++j) {
        double lj = dec.sizes[static_cast<size_t>(j)];
        double aj = sm.alpha[static_cast<size_t>(j)];
        rho_inv += lj / aj;
        log_kappa += lj / aj * std::log(v[static_cast<size_t>(j)]);
    }
    p.rho = 1.0 / rho_inv;
    p.kappa = std::exp(log_kappa);
    p.v = std::move(v);
    return p;
}

double predicted_imse(std::span<const double> v, const Smoothness& sm, const Allocation& alloc) {
    if (v.size() != sm.alpha.size() || v.size() != alloc.n.size())
        throw std::invalid_argument("predicted_imse: component count mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < v.size(); ++j)
        acc += v[j] / std::pow(static_cast<double>(alloc.n[j]), sm.alpha[j]);
    return acc;
}

HolderBoundSpec make_holder_spec(double holder_c, const Smoothness& sm, const Decomposition& dec,
                                 std::span<const double> density_d) {
    if (static_cast<int>(density_d.size()) != dec.k)
        throw std::invalid_argument("make_holder_spec: one D_j per component required");
    HolderBoundSpec spec;
    spec.holder_c = holder_c;
    for (int j = 0; j < dec.k; ++j) {
        double aj = sm.alpha[static_cast<size_t>(j)];
        double lj = dec.sizes[static_cast<size_t>(j)];
        double c2 = std::pow(2.0, -aj) * std::pow(lj, 1.0 + aj / 2.0) *
                    std::pow(density_d[static_cast<size_t>(j)], aj);
        spec.c.push_back(std::sqrt(c2));
    }
    return spec;
}

double holder_bound(const HolderBoundSpec& spec, const Smoothness& sm, const Allocation& alloc) {
    if (spec.c.size() != sm.alpha.size() || spec.c.size() != alloc.n.size())
        throw std::invalid_argument("holder_bound: component count mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < spec.c.size(); ++j)
        acc += spec.c[j] * std::pow(static_cast<double>(alloc.n[j]), -sm.alpha[j] / 2.0);
    return std::sqrt(spec.holder_c) * acc;
}

}  // namespace fieldapprox
