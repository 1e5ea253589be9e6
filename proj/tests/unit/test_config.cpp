#include <doctest.h>

#include <cmath>

#include "uavcov/config.hpp"
#include "uavcov/errors.hpp"

using namespace uavcov;

TEST_CASE("default mobility gives a stay probability of about one half") {
    const MobilityConfig mob;
    const NetworkConfig net;
    CHECK(mob.mean_stay_time() == 4.0);
    CHECK(mob.mean_move_time(net) == doctest::Approx(std::log(50.0) / 9.8 * 10.0));
    CHECK(std::abs(derive_stay_probability(mob, net) - 0.5) < 0.001);
    CHECK(mob.mean_hop_length() == doctest::Approx(20.0 / 3.0));
}

TEST_CASE("equal mean stay and move times give one half") {
    NetworkConfig net;
    MobilityConfig mob;
    mob.v_min_mps = 1.0;
    mob.v_max_mps = std::exp(1.0);
    const double move = 1.0 / (std::exp(1.0) - 1.0) * net.height_m / 3.0;
    mob.tau_min_s = move - 1.0;
    mob.tau_max_s = move + 1.0;
    CHECK(derive_stay_probability(mob, net) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("stay probability is monotone in the mean times") {
    const NetworkConfig net;
    MobilityConfig mob;
    double prev = 0.0;
    for (double tau : {0.0, 1.0, 2.0, 5.0, 20.0}) {
        mob.tau_min_s = tau;
        mob.tau_max_s = tau;
        const double p = derive_stay_probability(mob, net);
        CHECK(p >= prev);
        prev = p;
    }
    CHECK(derive_stay_probability({.tau_min_s = 0.0, .tau_max_s = 0.0}, net) == 0.0);
    MobilityConfig slow;
    slow.v_max_mps = 5.0;  // longer moves, smaller p_s
    CHECK(derive_stay_probability(slow, net) < derive_stay_probability(MobilityConfig{}, net));
}

TEST_CASE("override takes precedence") {
    MobilityConfig mob;
    mob.stay_probability_override = 0.9;
    CHECK(derive_stay_probability(mob, NetworkConfig{}) == 0.9);
    CHECK(kinematic_stay_probability(mob, NetworkConfig{}) != 0.9);
    mob.stay_probability_override = 1.5;
    CHECK_THROWS_AS(mob.validate(), ConfigError);
}

TEST_CASE("configuration validation names the field") {
    NetworkConfig net;
    net.height_m = -1.0;
    try {
        net.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("network.height_m") != std::string::npos);
    }
    MobilityConfig mob;
    mob.v_max_mps = 0.1;
    CHECK_THROWS_AS(mob.validate(), ConfigError);
    FadingConfig f;
    f.m0 = 0;
    CHECK_THROWS_AS(f.validate(NetworkConfig{}), ConfigError);
}

TEST_CASE("altitude-dependent fading bands") {
    const NetworkConfig net;
    FadingConfig f;
    f.altitude_dependent = true;
    f.bands = FadingConfig::thirds_bands(net.height_m);
    f.validate(net);
    CHECK(f.interferer_m(0.0) == 1);
    CHECK(f.interferer_m(9.99) == 1);
    CHECK(f.interferer_m(10.0) == 2);
    CHECK(f.interferer_m(25.0) == 3);
    CHECK(f.interferer_m(30.0) == 3);
    CHECK(f.max_interferer_m() == 3);

    FadingConfig gap = f;
    gap.bands[1].lower_m = 12.0;
    CHECK_THROWS_AS(gap.validate(net), ConfigError);
    FadingConfig short_top = f;
    short_top.bands.back().upper_m = 25.0;
    CHECK_THROWS_AS(short_top.validate(net), ConfigError);
    FadingConfig empty = f;
    empty.bands.clear();
    CHECK_THROWS_AS(empty.validate(net), ConfigError);
}
