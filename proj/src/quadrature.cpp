#include "fieldapprox/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fieldapprox {

Rule1D gauss_legendre_01(int q) {
    if (q < 2) throw std::invalid_argument("gauss_legendre_01: order must be >= 2");
    Rule1D rule;
    rule.nodes.resize(static_cast<size_t>(q));
    rule.weights.resize(static_cast<size_t>(q));
    // Newton iteration on P_q with Chebyshev-like initial guesses
    const int half = (q + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= q; ++n) {
                double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            pp = q * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        // map from [-1,1] to [0,1]
        rule.nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - x);
        rule.nodes[static_cast<size_t>(q - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<size_t>(q - 1 - i)] = 0.5 * w;
    }
    return rule;
}

Rule1D graded_rule_01(int q, int level) {
    if (level < 0) throw std::invalid_argument("graded_rule_01: negative level");
    Rule1D base = gauss_legendre_01(q);
    if (level == 0) return base;
    std::vector<double> breaks;
    breaks.push_back(0.0);
    for (int i = level; i >= 1; --i) breaks.push_back(std::ldexp(1.0, -i));
    for (int i = 2; i <= level; ++i) breaks.push_back(1.0 - std::ldexp(1.0, -i));
    breaks.push_back(1.0);
    Rule1D rule;
    for (size_t s = 0; s + 1 < breaks.size(); ++s) {
        double lo = breaks[s], h = breaks[s + 1] - breaks[s];
        for (int i = 0; i < q; ++i) {
            rule.nodes.push_back(lo + h * base.nodes[static_cast<size_t>(i)]);
            rule.weights.push_back(h * base.weights[static_cast<size_t>(i)]);
        }
    }
    return rule;
}

}  // namespace fieldapprox
