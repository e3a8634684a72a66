#include "fieldapprox/interpolator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fieldapprox {

CellLocation locate_cell(const Design& design, std::span<const double> t) {
    const int d = design.dim();
    if (static_cast<int>(t.size()) != d) throw std::invalid_argument("locate_cell: dimension mismatch");
    CellLocation loc;
    loc.cell.resize(static_cast<size_t>(d));
    loc.local.resize(static_cast<size_t>(d));
    for (int m = 0; m < d; ++m) {
        double x = t[static_cast<size_t>(m)];
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("locate_cell: point outside [0,1]^d");
        const auto& kv = design.knots(m);
        // half-open from above: x in (kv[i], kv[i+1]] maps to cell i, x = 0 to cell 0
        auto it = std::lower_bound(kv.begin() + 1, kv.end(), x);
        int i = static_cast<int>(it - kv.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(kv.size()) - 2);
        loc.cell[static_cast<size_t>(m)] = i;
        loc.local[static_cast<size_t>(m)] =
            (x - kv[static_cast<size_t>(i)]) / (kv[static_cast<size_t>(i) + 1] - kv[static_cast<size_t>(i)]);
    }
    return loc;
}

std::vector<double> vertex_weights(std::span<const double> s) {
    const int d = static_cast<int>(s.size());
    std::vector<double> w(static_cast<size_t>(1) << d, 1.0);
    // expand one coordinate at a time: after step m the first 2^{m+1}
    // entries hold the partial products
    size_t block = 1;
    for (int m = 0; m < d; ++m) {
        double sm = s[static_cast<size_t>(m)];
        for (size_t v = 0; v < block; ++v) {
            double base = w[v];
            w[v] = base * (1.0 - sm);
            w[v + block] = base * sm;
        }
        block <<= 1;
    }
    return w;
}

double mpli_eval(const Design& design,
                 const std::function<double(std::span<const int>)>& vertex_value,
                 std::span<const double> t) {
    if (!vertex_value) throw std::invalid_argument("mpli_eval: vertex accessor required");
    CellLocation loc = locate_cell(design, t);
    std::vector<double> w = vertex_weights(loc.local);
    const int d = design.dim();
    std::vector<int> vertex(static_cast<size_t>(d));
    double out = 0.0;
    for (size_t mask = 0; mask < w.size(); ++mask) {
        if (w[mask] == 0.0) continue;
        for (int m = 0; m < d; ++m)
            vertex[static_cast<size_t>(m)] = loc.cell[static_cast<size_t>(m)] + ((mask >> m) & 1u);
        double val = vertex_value(vertex);
        if (!std::isfinite(val)) throw std::runtime_error("mpli_eval: missing or non-finite vertex value");
        out += w[mask] * val;
    }
    return out;
}

}  // namespace fieldapprox
