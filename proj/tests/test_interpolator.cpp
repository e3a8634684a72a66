#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fieldapprox/interpolator.hpp"

using namespace fieldapprox;

namespace {
Design unit_design2d() {
    Decomposition dec({1, 1});
    return Design(dec, {{0.0, 0.5, 1.0}, {0.0, 0.25, 0.75, 1.0}});
}
}  // namespace

TEST_CASE("locate_cell conventions") {
    auto design = unit_design2d();
    std::vector<double> t{0.6, 0.1};
    auto loc = locate_cell(design, t);
    CHECK(loc.cell == std::vector<int>{1, 0});
    CHECK(loc.local[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(loc.local[1] == doctest::Approx(0.4).epsilon(1e-12));

    // interior knots belong to the lower cell with local coordinate 1
    std::vector<double> on_knot{0.5, 0.25};
    loc = locate_cell(design, on_knot);
    CHECK(loc.cell == std::vector<int>{0, 0});
    CHECK(loc.local[0] == doctest::Approx(1.0));
    CHECK(loc.local[1] == doctest::Approx(1.0));

    std::vector<double> origin{0.0, 0.0};
    loc = locate_cell(design, origin);
    CHECK(loc.cell == std::vector<int>{0, 0});
    CHECK(loc.local[0] == 0.0);

    std::vector<double> corner{1.0, 1.0};
    loc = locate_cell(design, corner);
    CHECK(loc.cell == std::vector<int>{1, 2});
    CHECK(loc.local[0] == doctest::Approx(1.0));
}

TEST_CASE("vertex weights at a sample point") {
    std::vector<double> s{0.3, 0.6};
    auto w = vertex_weights(s);
    REQUIRE(w.size() == 4);
    // mask bit 0 = first coordinate
    CHECK(w[0] == doctest::Approx(0.7 * 0.4).epsilon(1e-14));  // (0,0)
    CHECK(w[1] == doctest::Approx(0.3 * 0.4).epsilon(1e-14));  // (1,0)
    CHECK(w[2] == doctest::Approx(0.7 * 0.6).epsilon(1e-14));  // (0,1)
    CHECK(w[3] == doctest::Approx(0.3 * 0.6).epsilon(1e-14));  // (1,1)
}

TEST_CASE("weights form a partition of unity") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        int d = 1 + static_cast<int>(rng() % 4);
        std::vector<double> s(static_cast<size_t>(d));
        for (auto& x : s) x = u(rng);
        auto w = vertex_weights(s);
        double total = std::accumulate(w.begin(), w.end(), 0.0);
        CHECK(std::abs(total - 1.0) <= 1e-14);
        for (double x : w) CHECK(x >= 0.0);
    }
}

TEST_CASE("multilinear functions are reproduced exactly") {
    auto design = unit_design2d();
    auto f = [](double x, double y) { return 2.0 + 3.0 * x - y + 5.0 * x * y; };
    auto vertex_value = [&](std::span<const int> idx) {
        return f(design.knots(0)[static_cast<size_t>(idx[0])],
                 design.knots(1)[static_cast<size_t>(idx[1])]);
    };
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        std::vector<double> t{u(rng), u(rng)};
        CHECK(mpli_eval(design, vertex_value, t) == doctest::Approx(f(t[0], t[1])).epsilon(1e-12));
    }
}

TEST_CASE("interpolant matches the data at the knots") {
    auto design = unit_design2d();
    auto vertex_value = [](std::span<const int> idx) {
        return std::sin(1.0 * idx[0]) + 0.25 * idx[1] * idx[1];
    };
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; j <= 3; ++j) {
            std::vector<double> t{design.knots(0)[static_cast<size_t>(i)],
                                  design.knots(1)[static_cast<size_t>(j)]};
            std::vector<int> idx{i, j};
            CHECK(mpli_eval(design, vertex_value, t) ==
                  doctest::Approx(vertex_value(idx)).epsilon(1e-13));
        }
}

TEST_CASE("single corner value spreads multilinearly") {
    Decomposition dec({2});
    Design design(dec, {{0.0, 1.0}});
    auto vertex_value = [](std::span<const int> idx) {
        return (idx[0] == 1 && idx[1] == 1) ? 1.0 : 0.0;
    };
    std::vector<double> center{0.5, 0.5};
    CHECK(mpli_eval(design, vertex_value, center) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("interpolant is continuous across cell faces") {
    auto design = unit_design2d();
    std::mt19937_64 rng(17);
    auto vertex_value = [&](std::span<const int> idx) {
        std::mt19937_64 local(static_cast<std::uint64_t>(idx[0]) * 1000 + idx[1]);
        return std::uniform_real_distribution<double>(-1.0, 1.0)(local);
    };
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double y = u(rng);
        std::vector<double> left{0.5 - 1e-13, y};
        std::vector<double> at{0.5, y};
        std::vector<double> right{0.5 + 1e-13, y};
        double fl = mpli_eval(design, vertex_value, left);
        double fa = mpli_eval(design, vertex_value, at);
        double fr = mpli_eval(design, vertex_value, right);
        CHECK(std::abs(fl - fa) <= 1e-12);
        CHECK(std::abs(fr - fa) <= 1e-12);
    }
}

TEST_CASE("missing vertex values raise") {
    auto design = unit_design2d();
    auto vertex_value = [](std::span<const int>) { return std::nan(""); };
    std::vector<double> t{0.3, 0.3};
    CHECK_THROWS_AS(mpli_eval(design, vertex_value, t), std::runtime_error);
}
