#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "uavcov/config.hpp"
#include "uavcov/simulator.hpp"

namespace uavcov::cli {

/// Everything one CLI run needs. Thresholds are in dB here and converted to
/// linear scale once, by `psi_grid_linear`.
struct Scenario {
    NetworkConfig network;
    FadingConfig fading;
    MobilityConfig mobility;
    std::vector<double> psi_grid_db;
    sim::CampaignSettings simulation;
    int replications = 1;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    std::vector<double> psi_grid_linear() const;
    /// Stay probability used by the analysis (honours the override).
    double stay_probability() const { return derive_stay_probability(mobility, network); }

    bool operator==(const Scenario&) const = default;
};

/// H = 30 m, R = 40 m, two interferers, serving UAV at 10 m, Rayleigh links,
/// v in [0.2, 10] m/s, dwell in [2, 6] s, R' = 10 m, psi from -20 to 30 dB.
Scenario default_scenario();

/// Strict parse: unknown keys and wrong types raise ConfigError with the
/// JSON path of the field. Missing keys keep their defaults. Enabling
/// altitude-dependent fading without bands selects three equal bands, m = 1, 2, 3.
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& path);

}  // namespace uavcov::cli
