#pragma once

#include <nlohmann/json_fwd.hpp>

#include "fieldapprox/asymptotics.hpp"
#include "fieldapprox/density.hpp"
#include "fieldapprox/design.hpp"
#include "fieldapprox/error.hpp"

namespace fieldapprox {

nlohmann::json to_json(const Design& design);
Design design_from_json(const nlohmann::json& j);

// densities serialize as abscissa/value arrays (round-trips as Tabulated)
nlohmann::json to_json(const Density& h, int samples = 257);
Density density_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ErrorReport& report);
nlohmann::json to_json(const AsymptoticProfile& profile);

}  // namespace fieldapprox
