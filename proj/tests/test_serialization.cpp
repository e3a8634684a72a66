#include <doctest.h>

#include <nlohmann/json.hpp>

#include "fieldapprox/serialization.hpp"

using namespace fieldapprox;

TEST_CASE("design round-trip") {
    Decomposition dec({1, 2});
    Design design(dec, {{0.0, 0.25, 1.0}, {0.0, 0.5, 0.75, 1.0}});
    auto j = to_json(design);
    auto back = design_from_json(j);
    CHECK(back.decomposition().sizes == dec.sizes);
    CHECK(back.component_knots(0) == design.component_knots(0));
    CHECK(back.component_knots(1) == design.component_knots(1));
}

TEST_CASE("density round-trip") {
    auto h = Density::analytic([](double t) { return 0.5 + t; });
    auto back = density_from_json(to_json(h, 513));
    for (double t : {0.1, 0.4, 0.77}) CHECK(back.pdf(t) == doctest::Approx(h.pdf(t)).epsilon(1e-4));
    for (double p : {0.2, 0.5, 0.9})
        CHECK(back.quantile(p) == doctest::Approx(h.quantile(p)).epsilon(1e-4));
}

TEST_CASE("report and profile export") {
    ErrorReport report;
    report.imse2 = 0.125;
    report.sup_mse = 0.25;
    report.n_actual = 20;
    report.quad_order = 8;
    report.n = {4, 3};
    auto j = to_json(report);
    CHECK(j.at("imse2").get<double>() == 0.125);
    CHECK(j.at("sup_mse").get<double>() == 0.25);
    CHECK(j.at("n").get<std::vector<int>>() == std::vector<int>{4, 3});

    AsymptoticProfile p;
    p.v = {0.3, 0.1};
    p.rho = 0.3;
    p.kappa = 0.005;
    p.k = 2;
    auto jp = to_json(p);
    CHECK(jp.at("rho").get<double>() == 0.3);
    CHECK(jp.at("v").get<std::vector<double>>().size() == 2);
}
