#pragma once

#include <array>
#include <string_view>

#include "uavcov/config.hpp"
#include "uavcov/rng.hpp"

namespace uavcov {

/// Mobility phase of an interferer. `dwelling` UAVs hover at a waypoint
/// altitude and make spatial random-walk excursions; `moving` UAVs travel
/// vertically toward their next waypoint.
enum class Phase { dwelling, moving };

std::string_view to_string(Phase phase);

/// Stationary altitude law of an interferer conditioned on its phase:
/// uniform on [0, H] while dwelling, 6x/H^2 - 6x^2/H^3 while moving.
class AltitudeDistribution {
public:
    AltitudeDistribution(Phase phase, double height_m);

    Phase phase() const noexcept { return phase_; }
    double height() const noexcept { return height_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double p) const;
    double sample(RandomStream& rng) const { return quantile(rng.uniform()); }
    double mean() const noexcept { return 0.5 * height_; }

private:
    Phase phase_;
    double height_;
};

/// Law of the 3D distance W = sqrt(h^2 + Z^2) from an interferer to the
/// reference user, with Z the radius of a uniform point on the disk.
/// Piecewise on [0, H), [H, R), [R, sqrt(R^2 + H^2)]; requires H < R.
class DistanceDistribution {
public:
    DistanceDistribution(Phase phase, double radius_m, double height_m);
    DistanceDistribution(Phase phase, const NetworkConfig& net)
        : DistanceDistribution(phase, net.radius_m, net.height_m) {}

    Phase phase() const noexcept { return phase_; }
    double radius() const noexcept { return radius_; }
    double height() const noexcept { return height_; }
    double max_distance() const noexcept { return max_distance_; }

    /// {0, H, R, sqrt(R^2 + H^2)}: the pdf is smooth between consecutive entries.
    std::array<double, 4> breakpoints() const noexcept {
        return {0.0, height_, radius_, max_distance_};
    }

    double cdf(double w) const;
    double pdf(double w) const;
    double sample(RandomStream& rng) const;

    const AltitudeDistribution& altitude() const noexcept { return altitude_; }

private:
    double check_support(double w) const;

    Phase phase_;
    double radius_;
    double height_;
    double max_distance_;
    AltitudeDistribution altitude_;
};

}  // namespace uavcov
