#include <doctest.h>

#include <cmath>

#include "uavcov/errors.hpp"
#include "uavcov/interference.hpp"
#include "uavcov/rng.hpp"

using namespace uavcov;

namespace {

// Reference values computed with mpmath (30 digits) by direct quadrature of
// the distance pdfs: s, m, Y_dwelling, Y_moving.
struct FrozenUpsilon {
    double s;
    int m;
    double dwelling, moving;
};
constexpr FrozenUpsilon kAlpha2[] = {
    {0.01, 1, 0.99998295500811008, 0.99998505162423913},
    {0.01, 3, 0.99998294469933455, 0.99998505098360922},
    {0.5, 1, 0.99916736570363504024, 0.99925579856437903322},
    {100, 2, 0.87913190230428463364, 0.88075758189134608158},
    {2500, 3, 0.18063775394330353069, 0.17476993268262416876},
    {100000.0, 1, 0.010852714507140746169, 0.010561917038998768506},
    {1000000.0, 2, 5.9449546114549920809e-6, 5.5714866468006510836e-6},
    {1000000.0, 3, 6.0785648627539084e-8, 5.466957532028281e-8},
};
constexpr FrozenUpsilon kAlpha3[] = {
    {100, 1, 0.99094366225885747221, 0.9925112880714060271},
    {10000.0, 2, 0.69180345237086739564, 0.68798915453986785307},
};
// s, m, k, d^k Y_dwelling / ds^k, d^k Y_moving / ds^k
struct FrozenDerivative {
    double s;
    int m, k;
    double dwelling, moving;
};
constexpr FrozenDerivative kDerivatives[] = {
    {100, 1, 1, -0.00092894676189908789903, -0.00094008073740560006537},
    {100, 1, 2, 2.9715257122567657376e-6, 2.8898433779213553195e-6},
    {100, 1, 3, -2.3416003532152391305e-8, -2.0542703070233647408e-8},
    {10000.0, 2, 1, -5.5270181027697165051e-6, -5.3128767054175525381e-6},
    {10000.0, 2, 2, 1.2942993560306299732e-9, 1.2535758747053482987e-9},
    {10000.0, 2, 3, -4.0615792600386859061e-13, -3.9617419061300106582e-13},
};

}  // namespace

TEST_CASE("closed-form Laplace factor matches reference values") {
    const NetworkConfig net;
    for (const auto& f : kAlpha2) {
        CAPTURE(f.s);
        CAPTURE(f.m);
        CHECK(upsilon_closed_form(Phase::dwelling, f.s, f.m, net) == doctest::Approx(f.dwelling).epsilon(1e-12));
        CHECK(upsilon_closed_form(Phase::moving, f.s, f.m, net) == doctest::Approx(f.moving).epsilon(1e-9));
        CHECK(upsilon(Phase::dwelling, f.s, f.m, net) == doctest::Approx(f.dwelling).epsilon(1e-12));
        CHECK(upsilon(Phase::moving, f.s, f.m, net) == doctest::Approx(f.moving).epsilon(1e-12));
        CHECK(upsilon_quadrature(Phase::dwelling, f.s, f.m, net) == doctest::Approx(f.dwelling).epsilon(1e-9));
        CHECK(upsilon_quadrature(Phase::moving, f.s, f.m, net) == doctest::Approx(f.moving).epsilon(1e-9));
    }
}

TEST_CASE("quadrature handles other path-loss exponents") {
    NetworkConfig net;
    net.path_loss_exponent = 3.0;
    for (const auto& f : kAlpha3) {
        CAPTURE(f.s);
        CHECK(upsilon(Phase::dwelling, f.s, f.m, net) == doctest::Approx(f.dwelling).epsilon(1e-9));
        CHECK(upsilon(Phase::moving, f.s, f.m, net) == doctest::Approx(f.moving).epsilon(1e-9));
    }
}

TEST_CASE("quadrature derivatives match reference values") {
    const NetworkConfig net;
    for (const auto& f : kDerivatives) {
        CAPTURE(f.s);
        CAPTURE(f.k);
        CHECK(upsilon_quadrature(Phase::dwelling, f.s, f.m, net, f.k) == doctest::Approx(f.dwelling).epsilon(1e-8));
        CHECK(upsilon_quadrature(Phase::moving, f.s, f.m, net, f.k) == doctest::Approx(f.moving).epsilon(1e-8));
    }
}

TEST_CASE("closed form agrees with quadrature over a wide s range") {
    const NetworkConfig net;
    for (int i = 0; i <= 40; ++i) {
        const double s = std::pow(10.0, -3.0 + 10.0 * i / 40.0);
        for (int m = 1; m <= 3; ++m) {
            for (Phase ph : {Phase::dwelling, Phase::moving}) {
                CAPTURE(s);
                CAPTURE(m);
                const double c = upsilon(ph, s, m, net);
                const double q = upsilon_quadrature(ph, s, m, net);
                CHECK(std::abs(c - q) <= 1e-8 * q);
            }
        }
    }
}

TEST_CASE("closed form stays accurate where the binomial sum cancels heavily") {
    // s = 1e7, m = 3: the terms are O(1) and the result O(1e-11), past what
    // long double can resolve. Reference values from mpmath at 40 digits.
    const NetworkConfig net;
    CHECK(upsilon_closed_form(Phase::dwelling, 1e7, 3, net) ==
          doctest::Approx(6.1601818031756950401e-11).epsilon(1e-13));
    CHECK(upsilon_closed_form(Phase::moving, 1e7, 3, net) ==
          doctest::Approx(5.5370299566893872338e-11).epsilon(1e-13));
    CHECK(upsilon(Phase::moving, 1e7, 3, net) ==
          doctest::Approx(5.5370299566893872338e-11).epsilon(1e-12));
}

TEST_CASE("the I and J building blocks") {
    // s -> 0+: (1 + m y / s)^-l vanishes for l >= 1; l = 0 leaves the plain
    // power integral (ell / R^2) (b^{k/2} - a^{k/2}) / k.
    CHECK(integral_I(2, 0.0, 900.0, 2.0 / 30.0, 3, 0.0, 1, 40.0) == 0.0);
    const double v = integral_I(0, 0.0, 900.0, 2.0 / 30.0, 3, 0.0, 1, 40.0);
    CHECK(v == doctest::Approx(2.0 / 30.0 / 1600.0 * std::pow(900.0, 1.5) / 3.0));
    CHECK(integral_I(0, 100.0, 900.0, 1.0, 2, 5.0, 1, 40.0) == doctest::Approx((900.0 - 100.0) / 2.0 / 1600.0));
    CHECK_THROWS_AS(integral_I(1, 0.0, 1.0, 1.0, 6, 1.0, 1, 40.0), DomainError);
    CHECK_THROWS_AS(integral_J(1, 1.0, 2, 1.0, 1, 40.0, 30.0), DomainError);
    CHECK(std::isfinite(integral_J(3, 4.0 / 27000.0, 3, 1e4, 3, 40.0, 30.0)));
}

TEST_CASE("Laplace factor at s = 0 and argument checks") {
    const NetworkConfig net;
    CHECK(upsilon(Phase::dwelling, 0.0, 1, net) == 1.0);
    CHECK(upsilon_closed_form(Phase::moving, 0.0, 3, net) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(upsilon_quadrature(Phase::moving, 0.0, 2, net) == 1.0);
    CHECK_THROWS_AS(upsilon_quadrature(Phase::moving, 0.0, 2, net, 1), DomainError);
    CHECK_THROWS_AS(upsilon(Phase::moving, -1.0, 2, net), DomainError);
}

TEST_CASE("unsupported geometry is named") {
    NetworkConfig net;
    net.height_m = 50.0;
    try {
        upsilon(Phase::dwelling, 1.0, 1, net);
        FAIL("expected UnsupportedGeometry");
    } catch (const UnsupportedGeometry& e) {
        CHECK(std::string(e.what()).find("H < R") != std::string::npos);
    }
}

TEST_CASE("binomial sum collapses to the mixture power") {
    RandomStream rng(99);
    NetworkConfig net;
    const FadingConfig fading;
    for (int i = 0; i < 20; ++i) {
        const double s = std::pow(10.0, rng.uniform(-2.0, 6.0));
        const double p = rng.uniform();
        for (int m_count = 1; m_count <= 10; ++m_count) {
            net.interferers = m_count;
            const double a = laplace_transform(s, net, fading, p);
            const double b = laplace_transform_binomial_sum(s, net, fading, p);
            CHECK(std::abs(a - b) <= 1e-13 * b);
        }
    }
    net.interferers = 0;
    CHECK(laplace_transform(123.0, net, fading, 0.3) == 1.0);
    CHECK(laplace_transform(0.0, NetworkConfig{}, fading, 0.3) == 1.0);
}

TEST_CASE("analysis rejects altitude-dependent fading") {
    FadingConfig f;
    f.altitude_dependent = true;
    f.bands = FadingConfig::thirds_bands(30.0);
    CHECK_THROWS_AS(laplace_transform(1.0, NetworkConfig{}, f, 0.5), ConfigError);
}

TEST_CASE("jet of the Laplace transform") {
    NetworkConfig net;
    net.interferers = 3;
    FadingConfig f;
    f.m_interferer = 2;
    const double p = 0.4;
    const double s0 = 2000.0;
    const Jet j = laplace_jet(s0, 3, net, f, p);
    CHECK(j.value() == doctest::Approx(laplace_transform(s0, net, f, p)).epsilon(1e-14));
    // Chain rule by hand for the first derivative: M * mix^(M-1) * mix'.
    const double ys = upsilon(Phase::dwelling, s0, 2, net);
    const double ym = upsilon(Phase::moving, s0, 2, net);
    const double ds = upsilon_quadrature(Phase::dwelling, s0, 2, net, 1);
    const double dm = upsilon_quadrature(Phase::moving, s0, 2, net, 1);
    const double mix = p * ys + (1 - p) * ym;
    CHECK(j.derivative(1) == doctest::Approx(3.0 * mix * mix * (p * ds + (1 - p) * dm)).epsilon(1e-12));
    // Central difference of the closed form.
    const double h = 1e-5 * s0;
    const double fd = (laplace_transform(s0 + h, net, f, p) - laplace_transform(s0 - h, net, f, p)) / (2 * h);
    CHECK(j.derivative(1) == doctest::Approx(fd).epsilon(1e-7));
}
