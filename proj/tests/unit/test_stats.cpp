#include <doctest.h>

#include <cmath>
#include <vector>

#include "uavcov/errors.hpp"
#include "uavcov/rng.hpp"
#include "uavcov/stats.hpp"

using namespace uavcov;

TEST_CASE("KS distance of a perfect grid and of uniform samples") {
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
    CHECK(stats::ks_distance(grid, [](double x) { return x; }) == doctest::Approx(0.005));

    RandomStream rng(3);
    std::vector<double> u(20000);
    for (auto& x : u) x = rng.uniform();
    CHECK(stats::ks_distance(u, [](double x) { return x; }) < 0.015);
    // Wrong reference law is detected.
    CHECK(stats::ks_distance(u, [](double x) { return x * x; }) > 0.2);
}

TEST_CASE("chi-square p-values") {
    // Statistic 0 gives p = 1; a wildly wrong histogram gives p ~ 0.
    const std::vector<std::uint64_t> even = {100, 100, 100, 100};
    const std::vector<double> p = {0.25, 0.25, 0.25, 0.25};
    const auto r0 = stats::chi_square(even, p);
    CHECK(r0.statistic == 0.0);
    CHECK(r0.p_value == doctest::Approx(1.0));
    CHECK(r0.degrees_of_freedom == 3);
    const std::vector<std::uint64_t> skew = {400, 0, 0, 0};
    CHECK(stats::chi_square(skew, p).p_value < 1e-100);
    // chi2 = 4 on 1 dof: p = erfc(sqrt(2)) = 0.0455003.
    const std::vector<std::uint64_t> coin = {60, 40};
    const std::vector<double> half = {0.5, 0.5};
    const auto r1 = stats::chi_square(coin, half);
    CHECK(r1.statistic == doctest::Approx(4.0));
    CHECK(r1.p_value == doctest::Approx(std::erfc(std::sqrt(2.0))).epsilon(1e-12));
    CHECK_THROWS_AS(stats::chi_square(even, half), DomainError);
}

TEST_CASE("binomial pmf and total variation") {
    const auto pmf = stats::binomial_pmf(3, 0.5);
    REQUIRE(pmf.size() == 4);
    CHECK(pmf[0] == doctest::Approx(0.125));
    CHECK(pmf[1] == doctest::Approx(0.375));
    const auto degenerate = stats::binomial_pmf(2, 0.0);
    CHECK(degenerate[0] == 1.0);
    const std::vector<double> a = {0.5, 0.5}, b = {0.25, 0.25, 0.5};
    CHECK(stats::total_variation(a, b) == doctest::Approx(0.5));
    CHECK(stats::total_variation(a, a) == 0.0);
}

TEST_CASE("histogram edges") {
    const std::vector<double> v = {0.0, 0.25, 0.5, 1.0, 1.5, -0.1};
    const auto h = stats::histogram(v, 0.0, 1.0, 2);
    CHECK(h[0] == 2);
    CHECK(h[1] == 2);
}

TEST_CASE("batch means and moment estimates") {
    const std::vector<double> batches = {1.0, 2.0, 3.0, 4.0};
    const auto e = stats::batch_means(batches);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.standard_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    const auto m = stats::from_moments(10.0, 30.0, 4);  // values 1,2,3,4
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.standard_error == doctest::Approx(e.standard_error));
}
