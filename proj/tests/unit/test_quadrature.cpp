#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "uavcov/errors.hpp"
#include "uavcov/quadrature.hpp"

using namespace uavcov;

TEST_CASE("Gauss-Kronrod panel is exact for low-degree polynomials") {
    // The 21-point Kronrod rule integrates degree 31 exactly.
    const std::array<double, 2> ab = {-1.0, 2.0};
    for (int d : {0, 1, 5, 17, 31}) {
        CAPTURE(d);
        const auto r = quadrature::integrate_scalar([d](double x) { return std::pow(x, d); }, ab);
        const double exact = (std::pow(2.0, d + 1) - std::pow(-1.0, d + 1)) / (d + 1);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
        // The embedded 10-point Gauss rule is exact only to degree 19, so
        // only then does the error estimate accept a single panel.
        if (d <= 19) CHECK(r.panels == 1);
    }
}

TEST_CASE("adaptive integration of smooth and endpoint-singular integrands") {
    const std::array<double, 2> unit = {0.0, 1.0};
    auto e = quadrature::integrate_scalar([](double x) { return std::exp(x); }, unit);
    CHECK(e.value == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));

    // Integrable singularity: the bisection concentrates panels at 0.
    auto s = quadrature::integrate_scalar([](double x) { return 1.0 / std::sqrt(x); }, unit,
                                          {1e-10, 1e-10, 2000});
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.panels > 1);

    // Sharp peak far from the centre.
    const std::array<double, 2> wide = {0.0, 100.0};
    auto p = quadrature::integrate_scalar([](double x) { return 1e-2 / ((x - 3.0) * (x - 3.0) + 1e-4); }, wide);
    const double exact = std::atan(97.0 / 1e-2) + std::atan(3.0 / 1e-2);
    CHECK(p.value == doctest::Approx(exact).epsilon(1e-10));
    CHECK(p.abs_error <= 1e-10 * std::abs(p.value));
}

TEST_CASE("breakpoints split the range and a kink is handled") {
    const std::array<double, 3> brk = {-1.0, 0.3, 2.0};
    auto r = quadrature::integrate_scalar([](double x) { return std::abs(x - 0.3); }, brk);
    CHECK(r.value == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7).epsilon(1e-15));
    CHECK(r.panels == 2);
}

TEST_CASE("quadrature failures are reported") {
    const std::array<double, 2> unit = {0.0, 1.0};
    const std::array<double, 1> one = {0.0};
    CHECK_THROWS_AS(quadrature::integrate_scalar([](double) { return 1.0; }, one), DomainError);
    try {
        quadrature::integrate_scalar([](double x) { return std::sin(1.0 / (x + 1e-9)); }, unit, {1e-15, 1e-15, 5});
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::isfinite(e.partial_value()));
        CHECK(e.error_bound() > 0.0);
    }
}
