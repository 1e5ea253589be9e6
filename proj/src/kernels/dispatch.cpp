#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "uavcov/kernels/kernels.hpp"

namespace uavcov::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(UAVCOV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("UAVCOV_ISA")) {
        const std::string want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::runtime_error("ISA " + std::string(to_string(isa)) + " is not available");
    }
    current().store(isa, std::memory_order_relaxed);
}

void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out) {
#if defined(UAVCOV_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        avx2::laplace_integrand(path_arg, weight, s, m, k, out);
        return;
    }
#endif
    scalar::laplace_integrand(path_arg, weight, s, m, k, out);
}

double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq) {
#if defined(UAVCOV_HAVE_AVX2)
    if (active_isa() == Isa::avx2) return avx2::interference_alpha2(gain, dist_sq);
#endif
    return scalar::interference_alpha2(gain, dist_sq);
}

}  // namespace uavcov::kernels
