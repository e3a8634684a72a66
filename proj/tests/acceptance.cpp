// End-to-end checks of the headline numbers and rate behavior. Each
// criterion prints one PASS/FAIL line; the exit status is nonzero when
// any of them fails.
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fieldapprox/asymptotics.hpp"
#include "fieldapprox/density.hpp"
#include "fieldapprox/design.hpp"
#include "fieldapprox/error.hpp"
#include "fieldapprox/interpolator.hpp"
#include "fieldapprox/kernels.hpp"

using namespace fieldapprox;

namespace {

int failures = 0;

void report(int id, const char* label, bool ok, const char* detail) {
    std::printf("criterion %d (%s): %s — %s\n", id, label, ok ? "PASS" : "FAIL", detail);
    if (!ok) ++failures;
}

Design uniform_design(const Decomposition& dec, const std::vector<int>& n) {
    std::vector<Density> densities(static_cast<size_t>(dec.k), Density::uniform());
    return build_design(densities, Allocation{n}, dec);
}

// least-squares slope of log y against log x over the last half of the data
double loglog_slope_upper_half(const std::vector<double>& x, const std::vector<double>& y) {
    size_t first = x.size() / 2;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int m = 0;
    for (size_t i = first; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void criterion1() {
    double got = a_beta(0.5);
    bool ok = std::abs(got - 0.366667) <= 5e-5;
    char buf[128];
    std::snprintf(buf, sizeof buf, "a(1/2) = %.6f, expected 0.366667", got);
    report(1, "scalar cell constant", ok, buf);
}

void criterion2() {
    std::vector<double> u{1.0, 1.0};
    double got = b_const(1.5, 2, u, QuadratureSpec{24, 0, 5});
    bool ok = std::abs(got - 0.0935) <= 1.5e-3;
    char buf[128];
    std::snprintf(buf, sizeof buf, "b(3/2, 2) on the unit square = %.6f, expected 0.0935", got);
    report(2, "planar cell constant", ok, buf);
}

void criterion3() {
    Decomposition dec({1, 2});
    Smoothness sm({0.5, 1.5});
    QuadratureSpec spec{16, 12, 5};
    auto fbf = CovarianceModel::fractional_brownian(dec, sm);
    std::vector<double> v{v_general(fbf, Density::uniform(), 0, spec),
                          v_general(fbf, Density::uniform(), 1, spec)};
    auto p = profile(v, sm, dec);
    double got = p.optimal_bound(1.0);  // k kappa^rho = 2 kappa^{3/10}
    bool ok = std::abs(got - 0.4245) <= 5e-3 && std::abs(p.rho - 0.3) <= 1e-12;
    char buf[160];
    std::snprintf(buf, sizeof buf, "rho = %.4f, 2 kappa^0.3 = %.5f, expected 0.3 and 0.4245",
                  p.rho, got);
    report(3, "two-component rate constant", ok, buf);
}

void criterion4() {
    auto bm = CovarianceModel::fractional_brownian(Decomposition({1}), Smoothness({1.0}));
    double worst = 0.0;
    for (int n : {1, 2, 4, 8, 16}) {
        auto r = imse(bm, uniform_design(bm.decomposition(), {n}));
        worst = std::max(worst, std::abs(r.imse2 - 1.0 / (6.0 * n)));
    }
    bool ok = worst <= 1e-10;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max deviation from 1/(6n) is %.3e", worst);
    report(4, "Brownian closed form", ok, buf);
}

void criterion5() {
    QuadratureSpec spec{16, 20, 5};
    double worst = 0.0;
    for (double beta : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75}) {
        std::vector<double> one{1.0};
        worst = std::max(worst, std::abs(b_const(beta, 1, one, spec) - a_beta(beta)));
    }
    bool ok = worst <= 1e-6;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |b - a| over the exponent grid is %.3e", worst);
    report(5, "one-dimensional consistency", ok, buf);
}

void criterion6() {
    Decomposition dec({1, 2});
    Smoothness sm({0.5, 1.5});
    auto fbf = CovarianceModel::fractional_brownian(dec, sm);
    QuadratureSpec spec{16, 0, 5};

    // uniform allocations n_1 = n_2 = n: the slower component dominates
    // once the n^{-3/2} share is removed
    std::vector<double> xs, ys;
    for (int n = 9; n <= 20; ++n) {
        auto r = imse(fbf, uniform_design(dec, {n, n}), spec);
        double n_actual = std::pow(n + 1.0, 3.0);
        double residual = r.imse2 - 0.0935 * std::pow(n_actual, -0.5);
        xs.push_back(n_actual);
        ys.push_back(residual);
    }
    double slope_u = loglog_slope_upper_half(xs, ys);
    bool ok_u = std::abs(slope_u + 1.0 / 6.0) <= 0.02;

    // optimized allocations follow the faster overall rate -3/10
    std::vector<double> v{0.366667, 0.0935};
    std::vector<double> xo, yo;
    for (double target : {410.0, 469.0, 537.0, 614.0, 702.0, 803.0, 919.0, 1051.0, 1202.0, 1375.0,
                          1573.0, 1800.0}) {
        auto alloc = optimal_allocation(v, sm, dec, target);
        auto r = imse(fbf, uniform_design(dec, alloc.n), spec);
        xo.push_back(static_cast<double>(actual_points(alloc, dec)));
        yo.push_back(r.imse2);
    }
    double slope_o = loglog_slope_upper_half(xo, yo);
    bool ok_o = std::abs(slope_o + 0.30) <= 0.02;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "uniform residual slope %.4f (want -0.1667), optimized slope %.4f (want -0.30)",
                  slope_u, slope_o);
    report(6, "convergence-rate sweeps", ok_u && ok_o, buf);
}

void criterion7() {
    struct Case {
        CovarianceModel model;
        std::vector<int> n;
    };
    std::vector<Case> cases;
    cases.push_back({CovarianceModel::fractional_brownian(Decomposition({1}), Smoothness({1.0})), {4}});
    cases.push_back(
        {CovarianceModel::fractional_brownian(Decomposition({1, 1}), Smoothness({0.5, 1.5})), {4, 3}});
    cases.push_back({CovarianceModel::scaled_exponential2d(), {7}});
    bool ok = true;
    double worst_sigmas = 0.0;
    for (const auto& c : cases) {
        auto design = uniform_design(c.model.decomposition(), c.n);
        auto exact = imse(c.model, design, QuadratureSpec{16, 4, 5});
        auto mc = mc_imse(c.model, design, 256, 10000, 20240901u);
        double sigmas = std::abs(mc.estimate - exact.imse2) / mc.std_error;
        worst_sigmas = std::max(worst_sigmas, sigmas);
        if (sigmas > 3.0) ok = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst quadrature/Monte-Carlo gap is %.2f standard errors",
                  worst_sigmas);
    report(7, "Monte-Carlo cross-check", ok, buf);
}

void criterion8() {
    bool ok = true;
    std::string why = "all invariants hold";

    // interpolation weights form a partition of unity
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 1000 && ok; ++i) {
        std::vector<double> s(3);
        for (auto& x : s) x = unif(rng);
        auto w = vertex_weights(s);
        double total = 0.0;
        for (double x : w) total += x;
        if (std::abs(total - 1.0) > 1e-14) {
            ok = false;
            why = "weights do not sum to one";
        }
    }

    // error decreases under refinement
    auto model = CovarianceModel::scaled_exponential2d();
    double prev = 1e300;
    for (int n : {3, 6, 12}) {
        auto r = imse(model, uniform_design(model.decomposition(), {n}));
        if (r.imse2 >= prev) {
            ok = false;
            why = "error failed to decrease under refinement";
        }
        prev = r.imse2;
    }

    // knot density adapted to the local scale beats a mismatched one
    QuadratureSpec spec{12, 0, 5};
    auto C1 = integrated_C(model, 0);
    auto h_good = density_from_C([&C1](double x) { return C1(x); }, 1.0);
    auto h_bad = Density::analytic([](double t) { return 0.2 + 1.6 * t; });
    double v_good = v_general(model, h_good, 0, spec);
    double v_unif = v_general(model, Density::uniform(), 0, spec);
    double v_bad = v_general(model, h_bad, 0, spec);
    if (!(v_good <= v_unif * 1.001 && v_unif < v_bad)) {
        ok = false;
        why = "density adaptation did not reduce the error constant";
    }

    // scalar components: the closed-form optimal density is optimal
    auto C = [](double t) { return 1.0 + 4.0 * t * t; };
    auto h_opt = density_from_C(C, 1.0);
    double v_opt = v_one_dim(C, h_opt, 1.0);
    if (!(v_opt <= v_one_dim(C, Density::uniform(), 1.0) * (1.0 + 1e-9))) {
        ok = false;
        why = "closed-form density is not optimal";
    }

    report(8, "structural invariants", ok, why.c_str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
