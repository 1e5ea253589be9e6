#include <doctest.h>

#include <cmath>
#include <vector>

#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"

using namespace uavcov;

namespace {

CoverageQuery query(int interferers, int m0, int m1, double h0, double p_s, double psi_db) {
    CoverageQuery q;
    q.network.interferers = interferers;
    q.network.serving_altitude_m = h0;
    q.fading.m0 = m0;
    q.fading.m_interferer = m1;
    q.stay_probability = p_s;
    q.psi = db_to_linear(psi_db);
    return q;
}

std::vector<double> grid_db() {
    std::vector<double> g;
    for (int db = -20; db <= 30; db += 2) g.push_back(db);
    return g;
}

std::vector<double> curve(int interferers, int m0, int m1, double h0, double p_s) {
    std::vector<double> out;
    for (double db : grid_db()) out.push_back(coverage_probability(query(interferers, m0, m1, h0, p_s, db)));
    return out;
}

}  // namespace

TEST_CASE("reference coverage table with M = 2, m0 = m1 = 1, h0 = 20") {
    const double db[] = {-20, -10, 0, 10, 20, 30};
    // Printed table entries (six significant figures).
    const double p01[] = {0.988266, 0.898597, 0.468978, 0.0413881, 0.000674683, 7.14876e-6};
    const double p09[] = {0.987466, 0.896137, 0.471149, 0.0426635, 0.000703855, 7.47065e-6};
    for (int i = 0; i < 6; ++i) {
        CAPTURE(db[i]);
        CHECK(coverage_probability(query(2, 1, 1, 20.0, 0.1, db[i])) == doctest::Approx(p01[i]).epsilon(1e-5));
        CHECK(coverage_probability(query(2, 1, 1, 20.0, 0.9, db[i])) == doctest::Approx(p09[i]).epsilon(1e-5));
    }
}

TEST_CASE("higher m0 and m1 against reference values") {
    // mpmath: numerical derivatives of the directly integrated transform.
    struct Ref {
        int M, m0, m1;
        double h0, p_s, db, expected;
    };
    const Ref refs[] = {
        {2, 2, 1, 10, 0.5, 0, 0.875762478236543},
        {2, 3, 2, 10, 0.5, 5, 0.619925052303063},
        {5, 1, 1, 10, 0.5, -10, 0.928738608086554},
        {3, 2, 3, 15, 0.3, 10, 0.00280241618479371},
        {2, 1, 1, 10, 0.1, 0, 0.78396435},
        {1, 1, 1, 10, 0.1, 0, 0.885417616},
    };
    for (const auto& r : refs) {
        CAPTURE(r.m0);
        CAPTURE(r.db);
        CHECK(coverage_probability(query(r.M, r.m0, r.m1, r.h0, r.p_s, r.db)) ==
              doctest::Approx(r.expected).epsilon(1e-8));
    }
}

TEST_CASE("trivial limits") {
    for (int m0 : {1, 2, 4}) CHECK(coverage_probability(query(0, m0, 1, 10, 0.5, 10)) == 1.0);
    CHECK(coverage_probability(query(2, 1, 1, 10, 0.5, -120)) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(coverage_probability(query(2, 3, 2, 10, 0.5, -120)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coverage is a decreasing probability in psi") {
    for (int m0 : {1, 2, 3}) {
        const auto c = curve(3, m0, 2, 10.0, 0.5);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] >= 0.0);
            CHECK(c[i] <= 1.0);
            if (i > 0) CHECK(c[i] < c[i - 1]);
        }
    }
}

TEST_CASE("orderings in M, h0 and m1") {
    const auto base = curve(2, 1, 1, 10.0, 0.5);
    const auto more = curve(5, 1, 1, 10.0, 0.5);
    const auto higher = curve(2, 1, 1, 20.0, 0.5);
    const auto harsher = curve(2, 1, 3, 10.0, 0.5);
    for (std::size_t i = 0; i < base.size(); ++i) {
        CHECK(more[i] <= base[i]);
        CHECK(higher[i] <= base[i]);
        CHECK(harsher[i] <= base[i]);
    }
}

TEST_CASE("sweep keeps grid order and reports failures inline") {
    std::vector<double> psi;
    for (double db : grid_db()) psi.push_back(db_to_linear(db));
    const auto q = query(2, 2, 1, 10.0, 0.5, 0.0);
    const auto serial = coverage_sweep(psi, q, 1);
    const auto parallel = coverage_sweep(psi, q, 4);
    REQUIRE(serial.size() == psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        CHECK(serial[i].psi == psi[i]);
        CHECK(parallel[i].psi == psi[i]);
        CHECK(serial[i].p_cov == parallel[i].p_cov);
    }
    const std::vector<double> bad = {1.0, -1.0, 2.0};
    const auto rows = coverage_sweep(bad, q, 2);
    CHECK(rows[0].p_cov.has_value());
    CHECK_FALSE(rows[1].p_cov.has_value());
    CHECK(!rows[1].error.empty());
    CHECK(rows[2].p_cov.has_value());
    CHECK_THROWS_AS(coverage_sweep(std::vector<double>{}, q), ConfigError);

    const std::vector<double> tiny = {1e-12};
    CHECK(*coverage_sweep(tiny, q)[0].p_cov == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("conditioning warning and dB helpers") {
    FadingConfig f;
    f.m0 = 8;
    CHECK_FALSE(coverage_conditioning_warning(f));
    f.m0 = 9;
    CHECK(coverage_conditioning_warning(f));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}
