#include "fieldapprox/design.hpp"

#include <cmath>
#include <stdexcept>

namespace fieldapprox {

long long actual_points(const Allocation& alloc, const Decomposition& dec) {
    if (static_cast<int>(alloc.n.size()) != dec.k)
        throw std::invalid_argument("actual_points: allocation/decomposition mismatch");
    long long total = 1;
    for (int j = 0; j < dec.k; ++j) {
        if (alloc.n[static_cast<size_t>(j)] < 1)
            throw std::invalid_argument("actual_points: grid sizes must be >= 1");
        for (int i = 0; i < dec.sizes[static_cast<size_t>(j)]; ++i)
            total *= alloc.n[static_cast<size_t>(j)] + 1;
    }
    return total;
}

Design::Design(Decomposition dec, std::vector<std::vector<double>> component_knots)
    : dec_(std::move(dec)), knots_(std::move(component_knots)) {
    if (static_cast<int>(knots_.size()) != dec_.k)
        throw std::invalid_argument("Design: one knot vector per component required");
    for (const auto& kv : knots_) {
        if (kv.size() < 2 || kv.front() != 0.0 || kv.back() != 1.0)
            throw std::invalid_argument("Design: knot vectors must run from 0 to 1");
        for (size_t i = 1; i < kv.size(); ++i)
            if (!(kv[i] > kv[i - 1]))
                throw std::invalid_argument("Design: knots must be strictly increasing");
    }
}

const std::vector<double>& Design::knots(int coord) const {
    return knots_[static_cast<size_t>(dec_.component_of(coord))];
}

const std::vector<double>& Design::component_knots(int component) const {
    if (component < 0 || component >= dec_.k) throw std::out_of_range("component_knots: bad component");
    return knots_[static_cast<size_t>(component)];
}

int Design::cells(int coord) const {
    return static_cast<int>(knots(coord).size()) - 1;
}

long long Design::total_cells() const {
    long long m = 1;
    for (int i = 0; i < dec_.d; ++i) m *= cells(i);
    return m;
}

long long Design::total_knots() const {
    long long m = 1;
    for (int i = 0; i < dec_.d; ++i) m *= cells(i) + 1;
    return m;
}

std::vector<int> Design::cell_counts() const {
    std::vector<int> out(static_cast<size_t>(dec_.d));
    for (int i = 0; i < dec_.d; ++i) out[static_cast<size_t>(i)] = cells(i);
    return out;
}

void Design::cell_bounds(std::span<const int> idx, std::span<double> lo, std::span<double> hi) const {
    for (int m = 0; m < dec_.d; ++m) {
        const auto& kv = knots(m);
        int i = idx[static_cast<size_t>(m)];
        lo[static_cast<size_t>(m)] = kv[static_cast<size_t>(i)];
        hi[static_cast<size_t>(m)] = kv[static_cast<size_t>(i) + 1];
    }
}

Allocation Design::allocation() const {
    Allocation a;
    for (int j = 0; j < dec_.k; ++j)
        a.n.push_back(static_cast<int>(knots_[static_cast<size_t>(j)].size()) - 1);
    return a;
}

bool next_multi_index(std::vector<int>& idx, std::span<const int> extents) {
    for (size_t m = idx.size(); m-- > 0;) {
        if (++idx[m] < extents[m]) return true;
        idx[m] = 0;
    }
    return false;
}

std::vector<double> knots_from_density(const Density& h, int n) {
    if (n < 1) throw std::invalid_argument("knots_from_density: n must be >= 1");
    std::vector<double> t(static_cast<size_t>(n) + 1);
    t.front() = 0.0;
    t.back() = 1.0;
    for (int i = 1; i < n; ++i)
        t[static_cast<size_t>(i)] = h.quantile(static_cast<double>(i) / n);
    for (int i = 1; i <= n; ++i)
        if (!(t[static_cast<size_t>(i)] > t[static_cast<size_t>(i) - 1]))
            throw std::runtime_error("knots_from_density: CDF inversion produced non-increasing knots");
    return t;
}

Design build_design(const std::vector<Density>& densities, const Allocation& alloc,
                    const Decomposition& dec) {
    if (static_cast<int>(densities.size()) != dec.k || static_cast<int>(alloc.n.size()) != dec.k)
        throw std::invalid_argument("build_design: need one density and one grid size per component");
    std::vector<std::vector<double>> knots;
    knots.reserve(static_cast<size_t>(dec.k));
    for (int j = 0; j < dec.k; ++j)
        knots.push_back(knots_from_density(densities[static_cast<size_t>(j)], alloc.n[static_cast<size_t>(j)]));
    return Design(dec, std::move(knots));
}

Allocation optimal_allocation(const std::vector<double>& v, const Smoothness& sm,
                              const Decomposition& dec, double target_n) {
    if (static_cast<int>(v.size()) != dec.k || static_cast<int>(sm.alpha.size()) != dec.k)
        throw std::invalid_argument("optimal_allocation: component count mismatch");
    if (!(target_n >= 2.0)) throw std::invalid_argument("optimal_allocation: target N too small");
    for (double x : v)
        if (!(x > 0.0)) throw std::invalid_argument("optimal_allocation: constants v_j must be positive");

    Allocation a;
    if (dec.k == 1) {
        // single component: the grid size follows from the budget alone
        int l = dec.sizes[0];
        int n = static_cast<int>(std::llround(std::pow(target_n, 1.0 / l) - 1.0));
        a.n.push_back(std::max(1, n));
        return a;
    }
    double rho_inv = 0.0;
    for (int j = 0; j < dec.k; ++j)
        rho_inv += dec.sizes[static_cast<size_t>(j)] / sm.alpha[static_cast<size_t>(j)];
    double rho = 1.0 / rho_inv;
    double log_kappa = 0.0;
    for (int j = 0; j < dec.k; ++j)
        log_kappa += dec.sizes[static_cast<size_t>(j)] / sm.alpha[static_cast<size_t>(j)] *
                     std::log(v[static_cast<size_t>(j)]);
    for (int j = 0; j < dec.k; ++j) {
        double aj = sm.alpha[static_cast<size_t>(j)];
        double log_n = (rho / aj) * (std::log(target_n) - log_kappa) +
                       std::log(v[static_cast<size_t>(j)]) / aj;
        double cont = std::exp(log_n);
        if (!(cont > 0.0)) throw std::invalid_argument("optimal_allocation: target N too small");
        a.n.push_back(static_cast<int>(std::ceil(cont)));
    }
    return a;
}

Allocation holder_allocation(const Smoothness& sm, const Decomposition& dec, double target_n,
                             int order) {
    if (order != 0 && order != 1) throw std::invalid_argument("holder_allocation: order must be 0 or 1");
    if (!(target_n >= 2.0)) throw std::invalid_argument("holder_allocation: target N too small");
    double rho_inv = 0.0;
    for (int j = 0; j < dec.k; ++j) {
        double aj = sm.alpha[static_cast<size_t>(j)];
        rho_inv += dec.sizes[static_cast<size_t>(j)] / (order == 0 ? aj : 2.0 + aj);
    }
    double rho = 1.0 / rho_inv;
    Allocation a;
    for (int j = 0; j < dec.k; ++j) {
        double aj = sm.alpha[static_cast<size_t>(j)];
        double expo = rho / (order == 0 ? aj : 2.0 + aj);
        a.n.push_back(std::max(1, static_cast<int>(std::llround(std::pow(target_n, expo)))));
    }
    return a;
}

}  // namespace fieldapprox
