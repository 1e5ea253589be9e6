#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops. Every kernel has a scalar reference in
// `kernels::scalar` and, on x86-64 builds, an AVX2 variant in `kernels::avx2`.
// The unqualified entry points dispatch at runtime to the best ISA the CPU
// supports (override with UAVCOV_ISA=scalar|avx2).

namespace uavcov::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Forces an ISA for the whole process. Throws if the CPU or build lacks it.
void set_active_isa(Isa isa);

/// Laplace-factor integrand evaluated at path-loss arguments y = w^alpha:
///   out[i] = weight[i] * (m y / (m y + s))^m * (m / (m y + s))^k
/// which equals weight * w^(-alpha k) (1 + s w^-alpha / m)^-(m+k) without
/// dividing by y.
void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out);

/// Aggregate interference sum_i gain[i] / dist_sq[i] (path-loss exponent 2).
double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq);

namespace scalar {
void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out);
double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq);
}  // namespace scalar

#if defined(UAVCOV_HAVE_AVX2)
namespace avx2 {
void laplace_integrand(std::span<const double> path_arg, std::span<const double> weight,
                       double s, int m, int k, std::span<double> out);
double interference_alpha2(std::span<const double> gain, std::span<const double> dist_sq);
}  // namespace avx2
#endif

}  // namespace uavcov::kernels
