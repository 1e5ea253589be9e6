#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "uavcov/distributions.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/quadrature.hpp"
#include "uavcov/stats.hpp"

using namespace uavcov;

TEST_CASE("distance CDF and pdf values on the R = 40, H = 30 geometry") {
    const DistanceDistribution st(Phase::dwelling, 40.0, 30.0);
    const DistanceDistribution mo(Phase::moving, 40.0, 30.0);
    CHECK(st.cdf(0.0) == 0.0);
    CHECK(mo.cdf(0.0) == 0.0);
    CHECK(st.cdf(50.0) == 1.0);
    CHECK(mo.cdf(50.0) == 1.0);
    CHECK(st.cdf(30.0) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(mo.cdf(30.0) == doctest::Approx(0.39375).epsilon(1e-15));
    // At w = R: 1 - (1/3) H^2 / R^2 dwelling, 1 - (3/10) H^2 / R^2 moving.
    CHECK(st.cdf(40.0) == doctest::Approx(0.8125).epsilon(1e-15));
    CHECK(mo.cdf(40.0) == doctest::Approx(0.83125).epsilon(1e-15));
    CHECK(st.pdf(35.0) == doctest::Approx(0.04375).epsilon(1e-15));
    CHECK(st.pdf(0.0) == 0.0);
    CHECK(mo.pdf(0.0) == 0.0);
}

TEST_CASE("CDF branches are continuous at H and R") {
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, 40.0, 30.0);
        for (double edge : {30.0, 40.0}) {
            CAPTURE(edge);
            const double below = d.cdf(std::nextafter(edge, 0.0));
            const double above = d.cdf(std::nextafter(edge, 100.0));
            CHECK(std::abs(below - above) <= 1e-12);
        }
    }
    // Static at H: both branches give (2/3) H^2 / R^2.
    const DistanceDistribution st(Phase::dwelling, 40.0, 30.0);
    CHECK(st.cdf(30.0) == doctest::Approx(2.0 / 3.0 * 900.0 / 1600.0));
}

TEST_CASE("pdf integrates to the CDF") {
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, 40.0, 30.0);
        for (int i = 1; i <= 100; ++i) {
            const double w = d.max_distance() * i / 100.0;
            std::vector<double> brk = {0.0};
            for (double b : {30.0, 40.0}) {
                if (b < w) brk.push_back(b);
            }
            brk.push_back(w);
            const auto r = quadrature::integrate_scalar([&](double x) { return d.pdf(x); }, brk);
            CHECK(std::abs(r.value - d.cdf(w)) <= 1e-9);
        }
    }
}

TEST_CASE("CDF is non-decreasing and pdf non-negative") {
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, 40.0, 30.0);
        double prev = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double w = d.max_distance() * i / 2000.0;
            const double f = d.cdf(w);
            CHECK(f >= prev);
            CHECK(d.pdf(w) >= 0.0);
            prev = f;
        }
    }
}

TEST_CASE("support and geometry guards") {
    const DistanceDistribution d(Phase::dwelling, 40.0, 30.0);
    CHECK_THROWS_AS(d.cdf(-1.0), DomainError);
    CHECK_THROWS_AS(d.cdf(50.1), DomainError);
    CHECK_THROWS_AS(d.pdf(60.0), DomainError);
    CHECK_THROWS_AS(DistanceDistribution(Phase::moving, 30.0, 30.0), UnsupportedGeometry);
    CHECK_THROWS_AS(DistanceDistribution(Phase::moving, 20.0, 30.0), UnsupportedGeometry);
}

TEST_CASE("thin cylinder reduces to the planar disk") {
    const double r = 40.0;
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, r, 1e-6);
        for (double w : {5.0, 20.0, 39.0}) CHECK(d.cdf(w) == doctest::Approx(w * w / (r * r)).epsilon(1e-6));
        RandomStream rng(5);
        for (int i = 0; i < 1000; ++i) CHECK(d.sample(rng) <= r + 1e-6);
    }
}

TEST_CASE("altitude laws") {
    const AltitudeDistribution mo(Phase::moving, 30.0);
    const AltitudeDistribution st(Phase::dwelling, 30.0);
    CHECK(st.pdf(12.0) == doctest::Approx(1.0 / 30.0));
    CHECK(mo.pdf(15.0) == doctest::Approx(6.0 * 15 / 900.0 - 6.0 * 225 / 27000.0));
    CHECK(mo.pdf(-1.0) == 0.0);
    CHECK(mo.cdf(30.0) == 1.0);
    for (double p : {0.0, 1e-9, 0.1, 0.5, 0.77, 1.0}) {
        CAPTURE(p);
        CHECK(mo.cdf(mo.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
        CHECK(st.cdf(st.quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS(mo.quantile(1.5), DomainError);

    // Sample mean of the moving law is H / 2.
    RandomStream rng(9);
    double sum = 0.0, sum_sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double h = mo.sample(rng);
        sum += h;
        sum_sq += h * h;
    }
    const auto est = stats::from_moments(sum, sum_sq, n);
    CHECK(std::abs(est.mean - 15.0) <= 3.0 * est.standard_error);
}

TEST_CASE("Monte Carlo samples follow the closed-form CDFs") {
    RandomStream rng(2024);
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, 40.0, 30.0);
        std::vector<double> w(200000);
        for (auto& x : w) x = d.sample(rng);
        // 1.95 / sqrt(n) is the 0.1% KS critical value.
        CHECK(stats::ks_distance(w, [&](double v) { return d.cdf(v); }) < 1.95 / std::sqrt(200000.0));
    }
}
