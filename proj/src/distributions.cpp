#include "uavcov/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

namespace {

constexpr double kClampTolerance = 1e-14;

/// Round-off beyond [0, 1] is clamped; anything larger is a bug.
double clamp_probability(double p, const char* what) {
    if (p >= 0.0 && p <= 1.0) return p;
    if (p < 0.0 && p > -kClampTolerance) return 0.0;
    if (p > 1.0 && p < 1.0 + kClampTolerance) return 1.0;
    throw ConsistencyError(std::string(what) + " left [0, 1]: " + std::to_string(p));
}

}  // namespace

std::string_view to_string(Phase phase) {
    return phase == Phase::dwelling ? "dwelling" : "moving";
}

AltitudeDistribution::AltitudeDistribution(Phase phase, double height_m)
    : phase_(phase), height_(height_m) {
    if (!(height_m > 0.0)) throw ConfigError("altitude distribution: height must be > 0");
}

double AltitudeDistribution::pdf(double x) const {
    if (x < 0.0 || x > height_) return 0.0;
    if (phase_ == Phase::dwelling) return 1.0 / height_;
    const double h = height_;
    return 6.0 * x / (h * h) - 6.0 * x * x / (h * h * h);
}

double AltitudeDistribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= height_) return 1.0;
    const double u = x / height_;
    if (phase_ == Phase::dwelling) return u;
    return u * u * (3.0 - 2.0 * u);
}

double AltitudeDistribution::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("altitude quantile: p must lie in [0, 1]");
    if (phase_ == Phase::dwelling) return p * height_;
    // Root in [0, 1] of 3u^2 - 2u^3 = p.
    const double u = 0.5 - std::sin(std::asin(1.0 - 2.0 * p) / 3.0);
    return std::clamp(u, 0.0, 1.0) * height_;
}

DistanceDistribution::DistanceDistribution(Phase phase, double radius_m, double height_m)
    : phase_(phase),
      radius_(radius_m),
      height_(height_m),
      max_distance_(std::hypot(radius_m, height_m)),
      altitude_(phase, height_m) {
    if (!(radius_m > 0.0)) throw ConfigError("distance distribution: radius must be > 0");
    if (!(height_m < radius_m)) {
        throw UnsupportedGeometry(
            "distance distribution: the piecewise law requires height < radius (H < R)");
    }
}

double DistanceDistribution::check_support(double w) const {
    if (w >= 0.0 && w <= max_distance_) return w;
    if (w > max_distance_ && w <= max_distance_ * (1.0 + 1e-12)) return max_distance_;
    throw DomainError("distance " + std::to_string(w) + " outside support [0, " +
                      std::to_string(max_distance_) + "]");
}

double DistanceDistribution::cdf(double w_in) const {
    const double w = check_support(w_in);
    const double r2 = radius_ * radius_;
    const double h = height_;
    const double w2 = w * w;
    double value = 0.0;
    if (phase_ == Phase::dwelling) {
        if (w < h) {
            value = 2.0 / 3.0 * w2 * w / (r2 * h);
        } else {
            value = (w2 - h * h / 3.0) / r2;
            if (w >= radius_) {
                const double e = w2 - r2;
                value -= 2.0 / 3.0 * e * std::sqrt(e) / (r2 * h);
            }
        }
    } else {
        if (w < h) {
            value = (1.5 * w2 * w2 / (h * h) - 0.8 * w2 * w2 * w / (h * h * h)) / r2;
        } else {
            value = (w2 - 0.3 * h * h) / r2;
            if (w >= radius_) {
                const double e = w2 - r2;
                value += (-1.5 * e * e / (h * h) + 0.8 * e * e * std::sqrt(e) / (h * h * h)) / r2;
            }
        }
    }
    return clamp_probability(value, "distance cdf");
}

double DistanceDistribution::pdf(double w_in) const {
    const double w = check_support(w_in);
    const double r2 = radius_ * radius_;
    const double h = height_;
    if (phase_ == Phase::dwelling) {
        if (w < h) return 2.0 * w * w / (r2 * h);
        double value = 2.0 * w / r2;
        if (w >= radius_) value -= 2.0 * w * std::sqrt(w * w - r2) / (r2 * h);
        return std::max(value, 0.0);
    }
    if (w < h) return (-4.0 * w * w * w * w / (h * h * h) + 6.0 * w * w * w / (h * h)) / r2;
    double value = 2.0 * w / r2;
    if (w >= radius_) {
        const double e = w * w - r2;
        value += (-6.0 * w * e / (h * h) + 4.0 * w * e * std::sqrt(e) / (h * h * h)) / r2;
    }
    return std::max(value, 0.0);
}

double DistanceDistribution::sample(RandomStream& rng) const {
    const double h = altitude_.sample(rng);
    const double z = radius_ * std::sqrt(rng.uniform());
    return std::sqrt(h * h + z * z);
}

}  // namespace uavcov
