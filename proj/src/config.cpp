#include "uavcov/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void NetworkConfig::validate() const {
    require(finite_positive(radius_m), "network.radius_m must be > 0");
    require(finite_positive(height_m), "network.height_m must be > 0");
    require(finite_positive(serving_altitude_m), "network.serving_altitude_m must be > 0");
    require(interferers >= 0, "network.interferers must be >= 0");
    require(std::isfinite(path_loss_exponent) && path_loss_exponent >= 2.0,
            "network.path_loss_exponent must be >= 2");
}

void FadingConfig::validate(const NetworkConfig& net) const {
    require(m0 >= 1, "fading.m0 must be a positive integer");
    require(m_interferer >= 1, "fading.m_interferer must be a positive integer");
    if (!altitude_dependent) return;

    require(!bands.empty(), "fading.bands must be non-empty when altitude_dependent is set");
    constexpr double tol = 1e-9;
    require(std::abs(bands.front().lower_m) <= tol, "fading.bands must start at altitude 0");
    require(std::abs(bands.back().upper_m - net.height_m) <= tol * std::max(1.0, net.height_m),
            "fading.bands must end at network.height_m");
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        require(b.m >= 1, "fading.bands[" + std::to_string(i) + "].m must be >= 1");
        require(b.upper_m > b.lower_m,
                "fading.bands[" + std::to_string(i) + "] must have upper_m > lower_m");
        if (i > 0) {
            require(std::abs(b.lower_m - bands[i - 1].upper_m) <= tol,
                    "fading.bands must be contiguous and non-overlapping (band " +
                        std::to_string(i) + ")");
        }
    }
}

int FadingConfig::interferer_m(double h) const {
    if (!altitude_dependent) return m_interferer;
    for (const auto& b : bands) {
        if (h >= b.lower_m && h < b.upper_m) return b.m;
    }
    // Only the top edge (h == H) is left.
    return bands.back().m;
}

int FadingConfig::max_interferer_m() const {
    if (!altitude_dependent) return m_interferer;
    int m = 1;
    for (const auto& b : bands) m = std::max(m, b.m);
    return m;
}

std::vector<FadingBand> FadingConfig::thirds_bands(double height_m) {
    return {{0.0, height_m / 3.0, 1},
            {height_m / 3.0, 2.0 * height_m / 3.0, 2},
            {2.0 * height_m / 3.0, height_m, 3}};
}

void MobilityConfig::validate() const {
    require(std::isfinite(v_min_mps) && v_min_mps > 0.0, "mobility.v_min_mps must be > 0");
    require(std::isfinite(v_max_mps) && v_max_mps > v_min_mps,
            "mobility.v_max_mps must exceed mobility.v_min_mps");
    require(std::isfinite(tau_min_s) && tau_min_s >= 0.0, "mobility.tau_min_s must be >= 0");
    require(std::isfinite(tau_max_s) && tau_max_s >= tau_min_s,
            "mobility.tau_max_s must be >= mobility.tau_min_s");
    require(finite_positive(r_prime_m), "mobility.r_prime_m must be > 0");
    if (stay_probability_override) {
        const double p = *stay_probability_override;
        require(std::isfinite(p) && p >= 0.0 && p <= 1.0,
                "mobility.stay_probability_override must lie in [0, 1]");
    }
}

double MobilityConfig::mean_move_time(const NetworkConfig& net) const {
    // E[L / v] with v ~ U[v_min, v_max] independent of the leg length L.
    return std::log(v_max_mps / v_min_mps) / (v_max_mps - v_min_mps) * mean_leg_length(net);
}

double kinematic_stay_probability(const MobilityConfig& mob, const NetworkConfig& net) {
    mob.validate();
    net.validate();
    const double stay = mob.mean_stay_time();
    const double move = mob.mean_move_time(net);
    return stay / (stay + move);
}

double derive_stay_probability(const MobilityConfig& mob, const NetworkConfig& net) {
    mob.validate();
    if (mob.stay_probability_override) return *mob.stay_probability_override;
    return kinematic_stay_probability(mob, net);
}

}  // namespace uavcov
