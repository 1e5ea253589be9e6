#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "uavcov/errors.hpp"

namespace uavcov {

/// Built-in or library floating-point type usable by the 2F1 templates.
template <class T>
concept RealType = std::numeric_limits<T>::is_specialized && !std::numeric_limits<T>::is_integer;

/// Rising factorial x (x+1) ... (x+k-1); the empty product is 1.
double pochhammer(double x, int k);

/// ln|Gamma(x)|, reentrant.
double log_gamma(double x);

/// Arguments of 2F1(a, b; c; z) as they arise from the Laplace-factor
/// integrals: integer a >= 0 (a binomial index), b > 0, z <= 0, and in every
/// production use c = b + 1.
struct Hyp2F1Args {
    int a = 0;
    double b = 1.0;
    double c = 2.0;
    double z = 0.0;
};

/// Gauss hypergeometric 2F1 on the non-positive real axis.
///
/// The c = b + 1 family is evaluated to ~1e-15 relative accuracy for every
/// z <= 0. Other c fall back to the series / Pfaff series, which throw
/// NumericalError when the term cap is exhausted.
double hyp2f1(const Hyp2F1Args& args);

namespace detail {

// Unqualified calls below resolve to std:: for built-in types and by
// argument-dependent lookup for extended-precision types.
using std::abs;
using std::expm1;
using std::log1p;
using std::pow;
using std::round;
using std::tgamma;

inline constexpr int kSeriesTermCap = 10000;

template <RealType T>
T series_tolerance() {
    return std::numeric_limits<T>::epsilon() / 2;
}

/// Defining series, |z| < 1.
template <RealType T>
T hyp2f1_series(int a, T b, T c, T z) {
    if (a == 0 || z == 0) return T(1);
    T term = 1;
    T sum = 1;
    int small_run = 0;
    for (int n = 0; n < kSeriesTermCap; ++n) {
        term *= (T(a) + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
        if (abs(term) <= series_tolerance<T>() * abs(sum)) {
            // Two consecutive negligible terms; the tail is geometric from here.
            if (++small_run == 2) return sum;
        } else {
            small_run = 0;
        }
    }
    throw NumericalError("2F1 series did not converge within " + std::to_string(kSeriesTermCap) +
                             " terms (z = " + std::to_string(static_cast<double>(z)) + ")",
                         static_cast<double>(sum), static_cast<double>(abs(term)));
}

/// Pfaff transformation 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)),
/// mapping z < 0 into [0, 1).
template <RealType T>
T hyp2f1_pfaff(int a, T b, T c, T z) {
    if (a == 0 || z == 0) return T(1);
    const T x = z / (z - 1);
    return pow(1 - z, -T(a)) * hyp2f1_series<T>(a, c - b, c, x);
}

/// c = b + 1 family for z < -1.
///
/// Integer b: 2F1 = b u^-b * integral_1^{1+u} (t-1)^{b-1} t^-a dt with u = -z,
/// expanded binomially into elementary terms.
/// Otherwise the 1/z connection formula, where b - c + 1 = 0 collapses the
/// second series to 1:
///   2F1 = b/(b-a) u^-a 2F1(a, a-b; a-b+1; -1/u) + b B(b, a-b) u^-b.
template <RealType T>
T hyp2f1_unit_shift_large(int a, T b, T z) {
    const T u = -z;
    const T b_round = round(b);
    if (abs(b - b_round) <= T(1e-12) * (b > T(1) ? b : T(1)) && b_round >= 1) {
        const int bi = static_cast<int>(b_round);
        const T log1pu = log1p(u);
        T sum = 0;
        T binom = 1;  // C(bi-1, j)
        for (int j = 0; j < bi; ++j) {
            const int p = j - a + 1;  // exponent after integrating t^(j-a)
            const T piece = (p == 0) ? log1pu : expm1(T(p) * log1pu) / T(p);
            const T sign = ((bi - 1 - j) % 2 == 0) ? T(1) : T(-1);
            sum += sign * binom * piece;
            binom = binom * T(bi - 1 - j) / T(j + 1);
        }
        return b * pow(u, -b) * sum;
    }
    const T a_t = T(a);
    const T shifted = a_t - b;
    const T first = b / (b - a_t) * pow(u, -a_t) *
                    hyp2f1_series<T>(a, shifted, shifted + 1, -1 / u);
    const T beta = tgamma(b) * tgamma(shifted) / tgamma(a_t);
    return first + b * beta * pow(u, -b);
}

}  // namespace detail

/// 2F1(a, b; b+1; z) for integer a >= 0, b > 0, z <= 0.
template <RealType T>
T hyp2f1_unit_shift(int a, T b, T z) {
    if (a < 0) throw DomainError("hyp2f1: a must be a non-negative integer");
    if (!(b > 0)) throw DomainError("hyp2f1: b must be positive");
    if (!(z <= 0)) throw DomainError("hyp2f1: z must be <= 0");
    if (a == 0 || z == 0) return T(1);
    if (z >= T(-0.5)) return detail::hyp2f1_series<T>(a, b, b + 1, z);
    if (z >= T(-2)) return detail::hyp2f1_pfaff<T>(a, b, b + 1, z);
    return detail::hyp2f1_unit_shift_large<T>(a, b, z);
}

}  // namespace uavcov
