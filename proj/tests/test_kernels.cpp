#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "fieldapprox/kernels.hpp"

using namespace fieldapprox;

namespace {
std::vector<double> random_point(std::mt19937_64& rng, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> p(static_cast<size_t>(d));
    for (auto& x : p) x = u(rng);
    return p;
}
}  // namespace

TEST_CASE("alpha_norm basics") {
    Decomposition dec({1, 2});
    Smoothness sm({0.5, 1.5});
    std::vector<double> zero(3, 0.0);
    CHECK(alpha_norm(zero, dec, sm) == 0.0);
    std::vector<double> e1{1.0, 0.0, 0.0};
    CHECK(alpha_norm(e1, dec, sm) == doctest::Approx(1.0).epsilon(1e-14));
    std::vector<double> s{0.25, 0.3, 0.4};
    CHECK(alpha_norm(s, dec, sm) == doctest::Approx(0.8535533906).epsilon(1e-9));
    std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(alpha_norm(bad, dec, sm), std::invalid_argument);
}

TEST_CASE("decomposition validation") {
    CHECK_THROWS_AS(Decomposition({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Smoothness({2.0}), std::invalid_argument);
    CHECK_THROWS_AS(Smoothness({0.0}), std::invalid_argument);
    Decomposition dec({2, 1});
    CHECK(dec.d == 3);
    CHECK(dec.component_of(0) == 0);
    CHECK(dec.component_of(2) == 1);
}

TEST_CASE("fractional Brownian covariance") {
    auto model = CovarianceModel::fractional_brownian(Decomposition({1, 2}), Smoothness({0.5, 1.5}));
    std::mt19937_64 rng(7);
    std::vector<double> zero(3, 0.0);
    for (int i = 0; i < 20; ++i) {
        auto t = random_point(rng, 3);
        CHECK(model.covariance(t, zero) == doctest::Approx(0.0).epsilon(1e-14));
    }
    auto bm = CovarianceModel::fractional_brownian(Decomposition({1}), Smoothness({1.0}));
    std::vector<double> a{0.5}, b{1.0};
    CHECK(bm.covariance(a, b) == doctest::Approx(0.5).epsilon(1e-14));  // min(t,s)
}

TEST_CASE("scaled exponential 2d kernel values") {
    auto model = CovarianceModel::scaled_exponential2d();
    std::vector<double> o{0.0, 0.0};
    CHECK(model.covariance(o, o) == doctest::Approx(100.0).epsilon(1e-12));
    std::vector<double> s{0.0, 0.1};
    double expected = 100.0 + 1.0 / (0.11 * 0.11) - 2.0 * 10.0 * (1.0 / 0.11) * std::exp(-0.1);
    double iv = model.increment_variance(o, s);
    CHECK(iv == doctest::Approx(expected).epsilon(1e-12));
    CHECK(iv > 0.0);
}

TEST_CASE("increment variance equals variogram for fBf") {
    auto model = CovarianceModel::fractional_brownian(Decomposition({1, 2}), Smoothness({0.5, 1.5}));
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        auto t = random_point(rng, 3);
        auto s = random_point(rng, 3);
        std::vector<double> diff(3);
        for (int m = 0; m < 3; ++m) diff[static_cast<size_t>(m)] = t[static_cast<size_t>(m)] - s[static_cast<size_t>(m)];
        CHECK(std::abs(model.increment_variance(t, s) - model.variogram(diff)) <= 1e-12);
    }
    auto t = random_point(rng, 3);
    CHECK(model.increment_variance(t, t) == 0.0);
}

TEST_CASE("covariance symmetry") {
    auto fbf = CovarianceModel::fractional_brownian(Decomposition({2}), Smoothness({1.2}));
    auto expq = CovarianceModel::scaled_exponential2d();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto t = random_point(rng, 2);
        auto s = random_point(rng, 2);
        CHECK(fbf.covariance(t, s) == fbf.covariance(s, t));
        CHECK(expq.covariance(t, s) == expq.covariance(s, t));
    }
}

TEST_CASE("PSD spot check on random Gram matrices") {
    std::mt19937_64 rng(5);
    std::vector<CovarianceModel> models;
    models.push_back(CovarianceModel::fractional_brownian(Decomposition({2}), Smoothness({1.0})));
    models.push_back(CovarianceModel::fractional_brownian(Decomposition({1, 1}), Smoothness({0.5, 1.5})));
    models.push_back(CovarianceModel::scaled_exponential2d());
    for (const auto& model : models) {
        const int n = 32;
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 2));
        Eigen::MatrixXd K(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) K(i, j) = model.covariance(pts[static_cast<size_t>(i)], pts[static_cast<size_t>(j)]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
        double lo = es.eigenvalues().minCoeff();
        double hi = es.eigenvalues().maxCoeff();
        CHECK(lo >= -1e-8 * hi);
    }
}

TEST_CASE("local stationarity diagnostic on the scaled exponential kernel") {
    auto model = CovarianceModel::scaled_exponential2d();
    auto check = local_stationarity_check(model, 1e-4);
    CHECK(check.samples > 0);
    CHECK(check.max_rel_deviation < 0.05);
}

TEST_CASE("zero model") {
    auto model = CovarianceModel::zero(Decomposition({1}), Smoothness({1.0}));
    std::vector<double> a{0.3}, b{0.8};
    CHECK(model.covariance(a, b) == 0.0);
    CHECK(model.increment_variance(a, b) == 0.0);
}

TEST_CASE("non-PSD custom kernel raises on negative increment variance") {
    auto bad = CovarianceModel::custom(
        "bad",
        [](std::span<const double> t, std::span<const double> s) {
            return (t[0] - s[0]) * (t[0] - s[0]);  // zero diagonal, positive off-diagonal
        },
        Decomposition({1}), Smoothness({1.0}));
    std::vector<double> a{0.0}, b{1.0};
    CHECK_THROWS_AS(bad.increment_variance(a, b), std::runtime_error);
}
