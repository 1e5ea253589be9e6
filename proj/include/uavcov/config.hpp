#pragma once

#include <optional>
#include <vector>

namespace uavcov {

/// Geometry and population of the finite UAV network.
///
/// Interferers live in a cylinder of radius `radius_m` and height `height_m`
/// centred on the reference user; the serving UAV hovers at
/// `serving_altitude_m` directly above the user.
struct NetworkConfig {
    double radius_m = 40.0;
    double height_m = 30.0;
    double serving_altitude_m = 10.0;
    int interferers = 2;
    double path_loss_exponent = 2.0;

    /// Throws ConfigError naming the violated field.
    void validate() const;

    /// True when the closed forms for alpha = 2 apply.
    bool is_free_space() const noexcept { return path_loss_exponent == 2.0; }

    bool operator==(const NetworkConfig&) const = default;
};

/// One altitude band of the altitude-dependent fading mode: [lower_m, upper_m) -> m.
/// The topmost band also contains its upper edge.
struct FadingBand {
    double lower_m = 0.0;
    double upper_m = 0.0;
    int m = 1;

    bool operator==(const FadingBand&) const = default;
};

/// Nakagami-m fading parameters (integer shapes, unit-mean power gains).
struct FadingConfig {
    int m0 = 1;
    int m_interferer = 1;
    bool altitude_dependent = false;
    std::vector<FadingBand> bands;

    void validate(const NetworkConfig& net) const;

    /// Fading parameter of an interferer at altitude `h`. Falls back to
    /// `m_interferer` unless the altitude-dependent mode is enabled.
    int interferer_m(double h) const;

    /// Largest m any interferer can take.
    int max_interferer_m() const;

    /// Three equal-height bands with m = 1, 2, 3 from the ground up.
    static std::vector<FadingBand> thirds_bands(double height_m);

    bool operator==(const FadingConfig&) const = default;
};

/// Vertical random-waypoint legs interleaved with spatial random-walk
/// excursions during dwells.
struct MobilityConfig {
    double v_min_mps = 0.2;
    double v_max_mps = 10.0;
    double tau_min_s = 2.0;
    double tau_max_s = 6.0;
    double r_prime_m = 10.0;
    std::optional<double> stay_probability_override;

    void validate() const;

    double mean_leg_length(const NetworkConfig& net) const { return net.height_m / 3.0; }
    double mean_stay_time() const { return 0.5 * (tau_min_s + tau_max_s); }
    double mean_move_time(const NetworkConfig& net) const;
    /// Mean length of one random-walk hop, R'/1.5.
    double mean_hop_length() const { return r_prime_m / 1.5; }

    bool operator==(const MobilityConfig&) const = default;
};

/// Stationary probability that an interferer is dwelling (making spatial
/// excursions) rather than moving vertically. Returns the override when set.
double derive_stay_probability(const MobilityConfig& mob, const NetworkConfig& net);

/// Stay probability implied by the kinematics alone, ignoring any override.
double kinematic_stay_probability(const MobilityConfig& mob, const NetworkConfig& net);

}  // namespace uavcov
