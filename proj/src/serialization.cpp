#include "fieldapprox/serialization.hpp"

#include <nlohmann/json.hpp>

namespace fieldapprox {

using nlohmann::json;

json to_json(const Design& design) {
    const Decomposition& dec = design.decomposition();
    json j;
    j["l"] = dec.sizes;
    json knots = json::array();
    for (int c = 0; c < dec.k; ++c) knots.push_back(design.component_knots(c));
    j["component_knots"] = std::move(knots);
    return j;
}

Design design_from_json(const json& j) {
    Decomposition dec(j.at("l").get<std::vector<int>>());
    std::vector<std::vector<double>> knots =
        j.at("component_knots").get<std::vector<std::vector<double>>>();
    return Design(std::move(dec), std::move(knots));
}

json to_json(const Density& h, int samples) {
    json j;
    std::vector<double> abscissa(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        abscissa[static_cast<size_t>(i)] = static_cast<double>(i) / (samples - 1);
    j["abscissa"] = std::move(abscissa);
    j["values"] = h.sample(samples);
    return j;
}

Density density_from_json(const json& j) {
    return Density::tabulated(j.at("values").get<std::vector<double>>());
}

json to_json(const ErrorReport& report) {
    json j;
    j["imse2"] = report.imse2;
    j["n_actual"] = report.n_actual;
    j["n"] = report.n;
    j["quad_order"] = report.quad_order;
    if (report.sup_mse >= 0.0) j["sup_mse"] = report.sup_mse;
    if (!report.cell_contributions.empty()) j["cell_contributions"] = report.cell_contributions;
    return j;
}

json to_json(const AsymptoticProfile& profile) {
    json j;
    j["v"] = profile.v;
    j["rho"] = profile.rho;
    j["kappa"] = profile.kappa;
    j["k"] = profile.k;
    return j;
}

}  // namespace fieldapprox
