#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "uavcov/kernels/kernels.hpp"
#include "uavcov/rng.hpp"

using namespace uavcov;

namespace {

std::vector<double> random_vector(RandomStream& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(lo, hi);
    return v;
}

}  // namespace

TEST_CASE("scalar Laplace integrand matches the direct formula") {
    RandomStream rng(7);
    const auto y = random_vector(rng, 21, 1e-3, 2500.0);
    const auto w = random_vector(rng, 21, 0.0, 1.0);
    std::vector<double> out(21);
    for (int m = 1; m <= 3; ++m) {
        for (int k = 0; k <= 3; ++k) {
            for (double s : {0.01, 5.0, 3e4}) {
                kernels::scalar::laplace_integrand(y, w, s, m, k, out);
                for (std::size_t i = 0; i < y.size(); ++i) {
                    const double direct = w[i] * std::pow(y[i], -k) * std::pow(1.0 + s / (m * y[i]), -(m + k));
                    CHECK(out[i] == doctest::Approx(direct).epsilon(1e-13));
                }
            }
        }
    }
}

#if defined(UAVCOV_HAVE_AVX2)
TEST_CASE("AVX2 kernels are equivalent to the scalar reference") {
    if (!kernels::isa_available(kernels::Isa::avx2)) {
        MESSAGE("CPU lacks AVX2; equivalence not exercised");
        return;
    }
    RandomStream rng(11);
    // Sizes cover full vectors, remainders and the empty case.
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 21u, 64u, 1001u}) {
        const auto y = random_vector(rng, n, 1e-3, 2500.0);
        const auto w = random_vector(rng, n, 0.0, 1.0);
        std::vector<double> a(n), b(n);
        for (int m = 1; m <= 3; ++m) {
            for (int k = 0; k <= 2; ++k) {
                kernels::scalar::laplace_integrand(y, w, 123.0, m, k, a);
                kernels::avx2::laplace_integrand(y, w, 123.0, m, k, b);
                // Same operation order per lane: bit-identical.
                CHECK(a == b);
            }
        }
        const auto g = random_vector(rng, n, 0.0, 4.0);
        const double s = kernels::scalar::interference_alpha2(g, y);
        const double v = kernels::avx2::interference_alpha2(g, y);
        // Lane-wise partial sums reassociate the addition.
        CHECK(std::abs(s - v) <= 1e-14 * std::max(1.0, std::abs(s)));
    }
}
#endif

TEST_CASE("ISA selection") {
    CHECK(kernels::isa_available(kernels::Isa::scalar));
    const auto original = kernels::active_isa();
    kernels::set_active_isa(kernels::Isa::scalar);
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    const std::vector<double> g = {1.0, 2.0}, d = {4.0, 8.0};
    CHECK(kernels::interference_alpha2(g, d) == 0.5);
    kernels::set_active_isa(original);
    CHECK(kernels::to_string(kernels::Isa::avx2) == "avx2");
}
