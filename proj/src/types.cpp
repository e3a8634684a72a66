#include "fieldapprox/types.hpp"

#include <cmath>

namespace fieldapprox {

Decomposition::Decomposition(std::vector<int> l) : sizes(std::move(l)) {
    if (sizes.empty()) throw std::invalid_argument("Decomposition: empty size vector");
    k = static_cast<int>(sizes.size());
    offsets.resize(static_cast<size_t>(k) + 1, 0);
    for (int j = 0; j < k; ++j) {
        if (sizes[static_cast<size_t>(j)] < 1)
            throw std::invalid_argument("Decomposition: component sizes must be >= 1");
        offsets[static_cast<size_t>(j) + 1] = offsets[static_cast<size_t>(j)] + sizes[static_cast<size_t>(j)];
    }
    d = offsets.back();
}

int Decomposition::component_of(int coord) const {
    if (coord < 0 || coord >= d) throw std::out_of_range("Decomposition::component_of: bad coordinate");
    for (int j = 0; j < k; ++j)
        if (coord < offsets[static_cast<size_t>(j) + 1]) return j;
    return k - 1;  // unreachable
}

Smoothness::Smoothness(std::vector<double> a) : alpha(std::move(a)) {
    for (double x : alpha)
        if (!(x > 0.0 && x < 2.0))
            throw std::invalid_argument("Smoothness: exponents must lie in (0, 2)");
}

std::vector<double> Smoothness::per_coordinate(const Decomposition& dec) const {
    if (static_cast<int>(alpha.size()) != dec.k)
        throw std::invalid_argument("Smoothness: component count mismatch");
    std::vector<double> out(static_cast<size_t>(dec.d));
    for (int j = 0; j < dec.k; ++j)
        for (int i = dec.offsets[static_cast<size_t>(j)]; i < dec.offsets[static_cast<size_t>(j) + 1]; ++i)
            out[static_cast<size_t>(i)] = alpha[static_cast<size_t>(j)];
    return out;
}

double component_norm(std::span<const double> v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    return std::sqrt(ss);
}

double alpha_norm(std::span<const double> s, const Decomposition& dec, const Smoothness& sm) {
    if (static_cast<int>(s.size()) != dec.d)
        throw std::invalid_argument("alpha_norm: dimension mismatch");
    if (static_cast<int>(sm.alpha.size()) != dec.k)
        throw std::invalid_argument("alpha_norm: smoothness/decomposition mismatch");
    double total = 0.0;
    for (int j = 0; j < dec.k; ++j) {
        double nrm = component_norm(dec.part(s, j));
        if (nrm > 0.0) total += std::pow(nrm, sm.alpha[static_cast<size_t>(j)]);
    }
    return total;
}

}  // namespace fieldapprox
