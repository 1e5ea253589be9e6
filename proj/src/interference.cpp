#include "uavcov/interference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "uavcov/errors.hpp"
#include "uavcov/kernels/kernels.hpp"
#include "uavcov/special_functions.hpp"

namespace uavcov {

namespace {

// The closed forms are summed in extended precision: the alternating
// binomial sum over l cancels heavily once s is large. Long double covers
// the usual range; quad precision takes over when the cancellation estimate
// says long double is not enough.
using Wide = long double;
using Quad = boost::multiprecision::cpp_bin_float_quad;

// Target relative error of a closed-form evaluation. Beyond it the
// analysis falls back to quadrature.
constexpr double kClosedFormMaxRelativeError = 1e-12;

void require_kappa(int kappa, int lo, int hi, const char* what) {
    if (kappa < lo || kappa > hi) {
        throw DomainError(std::string(what) + ": kappa " + std::to_string(kappa) +
                          " outside {" + std::to_string(lo) + ".." + std::to_string(hi) + "}");
    }
}

template <class T>
T integral_I_wide(int l, T a, T b, T ell, int kappa, T s, int m, T radius) {
    using std::pow;
    const T half = T(kappa) / 2;
    const T r2 = radius * radius;
    auto antiderivative = [&](T y) -> T {
        if (y == 0) return T(0);
        const T power = pow(y, half) / T(kappa);
        if (l == 0) return power;
        return power * hyp2f1_unit_shift<T>(l, half, -T(m) * y / s);
    };
    if (s == 0) {
        // (1 + m y / s)^-l -> 0 for every y > 0 once l >= 1.
        if (l > 0) return T(0);
    }
    return ell / r2 * (antiderivative(b) - antiderivative(a));
}

template <class T>
T integral_J_wide(int l, T ell, int kappa, T s, int m, T radius, T height) {
    using std::pow;
    const T r2 = radius * radius;
    const T h2 = height * height;
    const T base = ell * pow(height, T(kappa + 2)) / (T(kappa + 2) * r2);
    if (l == 0) return base;
    if (s == 0) return T(0);
    const T shrink = pow(s / (s + T(m) * r2), T(l));
    const T arg = -h2 / (r2 + s / T(m));
    return base * shrink * hyp2f1_unit_shift<T>(l, T(kappa) / 2 + 1, arg);
}

template <class T>
struct WideSum {
    T value = 0;
    T magnitude = 0;  // sum of |terms|, for the conditioning estimate

    void add(const T& term) {
        using std::abs;
        value += term;
        magnitude += abs(term);
    }

    /// Rounding bound relative to the value; infinite when the sum is not positive.
    double relative_error() const {
        if (!(value > 0)) return std::numeric_limits<double>::infinity();
        return static_cast<double>(8 * std::numeric_limits<T>::epsilon() * magnitude / value);
    }
};

template <class T>
WideSum<T> upsilon_closed_form_wide(Phase phase, double s_in, int m, const NetworkConfig& net) {
    const auto geo = UpsilonGeometry::for_network(net);
    const T s = s_in;
    const T r = geo.radius_m;
    const T h = geo.height_m;
    auto I = [&](int l, double a, double b, double ell, int kappa) {
        return integral_I_wide<T>(l, T(a), T(b), T(ell), kappa, s, m, r);
    };
    auto J = [&](int l, double ell, int kappa) { return integral_J_wide<T>(l, T(ell), kappa, s, m, r, h); };

    WideSum<T> total;
    T binom = 1;  // C(m, l)
    for (int l = 0; l <= m; ++l) {
        const T coeff = ((l % 2 == 0) ? T(1) : T(-1)) * binom;
        std::array<T, 7> terms{};
        std::size_t n = 0;
        if (phase == Phase::dwelling) {
            terms[n++] = I(l, geo.a1, geo.a2, geo.ell1, 3);
            terms[n++] = I(l, geo.a2, geo.a3, 2.0, 2);
            terms[n++] = I(l, geo.a3, geo.a4, 2.0, 2);
            terms[n++] = -J(l, geo.ell2, 1);
        } else {
            terms[n++] = I(l, geo.a1, geo.a2, geo.ell3, 4);
            terms[n++] = -I(l, geo.a1, geo.a2, geo.ell4, 5);
            terms[n++] = I(l, geo.a2, geo.a3, 2.0, 2);
            terms[n++] = I(l, geo.a3, geo.a4, 2.0, 2);
            terms[n++] = -I(l, geo.a3, geo.a4, geo.ell3, 4);
            terms[n++] = I(l, geo.a3, geo.a4, geo.ell5, 2);
            terms[n++] = J(l, geo.ell4, 3);
        }
        for (std::size_t i = 0; i < n; ++i) total.add(coeff * terms[i]);
        binom = binom * T(m - l) / T(l + 1);
    }
    return total;
}

struct ClosedForm {
    double value = 0.0;
    double relative_error = 0.0;
};

ClosedForm evaluate_closed_form(Phase phase, double s, int m, const NetworkConfig& net) {
    const auto wide = upsilon_closed_form_wide<Wide>(phase, s, m, net);
    if (wide.relative_error() <= kClosedFormMaxRelativeError) {
        return {static_cast<double>(wide.value), wide.relative_error()};
    }
    const auto quad = upsilon_closed_form_wide<Quad>(phase, s, m, net);
    return {static_cast<double>(quad.value), quad.relative_error()};
}

void validate_upsilon_inputs(double s, int m, const NetworkConfig& net) {
    net.validate();
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("upsilon: s must be finite and >= 0");
    if (m < 1) throw DomainError("upsilon: fading parameter m must be >= 1");
    UpsilonGeometry::for_network(net);
}

// Distance density times the Jacobian of the integration variable u.
// u in [0, R] is the distance itself; u in [R, R + H] maps to
// t = u - R = sqrt(w^2 - R^2), which removes the square-root kink at w = R.
struct DistanceMeasure {
    Phase phase;
    double radius;
    double height;

    // Returns (w^2, density * dw/du).
    std::pair<double, double> at(double u) const {
        const double r2 = radius * radius;
        const double h = height;
        if (u <= radius) {
            const double w = u;
            double density;
            if (phase == Phase::dwelling) {
                density = (w < h) ? 2.0 * w * w / (r2 * h) : 2.0 * w / r2;
            } else {
                density = (w < h) ? (6.0 * w * w * w / (h * h) - 4.0 * w * w * w * w / (h * h * h)) / r2
                                  : 2.0 * w / r2;
            }
            return {w * w, density};
        }
        const double t = u - radius;
        const double x = t / h;
        const double shape = (phase == Phase::dwelling) ? 1.0 - x : 1.0 - 3.0 * x * x + 2.0 * x * x * x;
        return {r2 + t * t, 2.0 * t / r2 * shape};
    }
};

}  // namespace

UpsilonGeometry UpsilonGeometry::for_network(const NetworkConfig& net) {
    const double r = net.radius_m;
    const double h = net.height_m;
    if (!(h < r)) {
        throw UnsupportedGeometry(
            "unsupported geometry: the Laplace-factor branch structure requires height_m < radius_m "
            "(H < R); got H = " +
            std::to_string(h) + ", R = " + std::to_string(r));
    }
    UpsilonGeometry g;
    g.radius_m = r;
    g.height_m = h;
    g.a1 = 0.0;
    g.a2 = h * h;
    g.a3 = r * r;
    g.a4 = r * r + h * h;
    g.ell1 = 2.0 / h;
    g.ell2 = 2.0 / h;
    g.ell3 = 6.0 / (h * h);
    g.ell4 = 4.0 / (h * h * h);
    g.ell5 = 6.0 * r * r / (h * h);
    return g;
}

double integral_I(int l, double a, double b, double ell, int kappa, double s, int m,
                  double radius_m) {
    require_kappa(kappa, 1, 5, "integral_I");
    if (l < 0) throw DomainError("integral_I: l must be >= 0");
    if (!(a >= 0.0 && a <= b)) throw DomainError("integral_I: need 0 <= a <= b");
    if (!(s >= 0.0)) throw DomainError("integral_I: s must be >= 0");
    return static_cast<double>(integral_I_wide<Wide>(l, a, b, ell, kappa, s, m, radius_m));
}

double integral_J(int l, double ell, int kappa, double s, int m, double radius_m,
                  double height_m) {
    if (kappa != 1 && kappa != 3) {
        throw DomainError("integral_J: kappa must be 1 or 3, got " + std::to_string(kappa));
    }
    if (l < 0) throw DomainError("integral_J: l must be >= 0");
    if (!(s >= 0.0)) throw DomainError("integral_J: s must be >= 0");
    return static_cast<double>(integral_J_wide<Wide>(l, ell, kappa, s, m, radius_m, height_m));
}

double upsilon_closed_form(Phase phase, double s, int m, const NetworkConfig& net) {
    validate_upsilon_inputs(s, m, net);
    if (!net.is_free_space()) {
        throw DomainError("upsilon_closed_form: closed form requires path_loss_exponent = 2");
    }
    if (s == 0.0) return 1.0;
    const double v = evaluate_closed_form(phase, s, m, net).value;
    return (v > 1.0 && v < 1.0 + 1e-12) ? 1.0 : v;
}

double upsilon_quadrature(Phase phase, double s, int m, const NetworkConfig& net,
                          int derivative_order, const quadrature::Options& options) {
    validate_upsilon_inputs(s, m, net);
    const int k = derivative_order;
    if (k < 0) throw DomainError("upsilon_quadrature: derivative order must be >= 0");
    if (k > 0 && s == 0.0) {
        throw DomainError("upsilon_quadrature: derivatives at s = 0 may diverge; need s > 0");
    }
    if (k == 0 && s == 0.0) return 1.0;

    const DistanceMeasure measure{phase, net.radius_m, net.height_m};
    const double alpha = net.path_loss_exponent;
    // The integrand is scaled by s^k so it stays O(1) regardless of s.
    const double scale = std::pow(s, k);
    auto batch = [&](std::span<const double> u, std::span<double> out) {
        std::array<double, quadrature::kNodes> y{};
        std::array<double, quadrature::kNodes> weight{};
        for (std::size_t i = 0; i < u.size(); ++i) {
            const auto [w2, density] = measure.at(u[i]);
            y[i] = (alpha == 2.0) ? w2 : std::pow(w2, 0.5 * alpha);
            weight[i] = density * scale;
        }
        kernels::laplace_integrand(std::span<const double>(y.data(), u.size()),
                                   std::span<const double>(weight.data(), u.size()), s, m, k, out);
    };
    const std::array<double, 4> breaks = {0.0, net.height_m, net.radius_m,
                                          net.radius_m + net.height_m};
    quadrature::Result res;
    try {
        res = quadrature::integrate(batch, breaks, options);
    } catch (const NumericalError& e) {
        throw NumericalError("Laplace-factor quadrature failed for derivative order k = " +
                                 std::to_string(k) + " (" + std::string(to_string(phase)) +
                                 ", s = " + std::to_string(s) + "): " + e.what(),
                             e.partial_value(), e.error_bound());
    }
    // (-1)^k (m)_k m^-k
    double prefactor = (k % 2 == 0) ? 1.0 : -1.0;
    for (int j = 0; j < k; ++j) prefactor *= static_cast<double>(m + j) / m;
    return prefactor * res.value / scale;
}

double upsilon(Phase phase, double s, int m, const NetworkConfig& net) {
    validate_upsilon_inputs(s, m, net);
    if (s == 0.0) return 1.0;
    if (net.is_free_space()) {
        const ClosedForm cf = evaluate_closed_form(phase, s, m, net);
        if (cf.relative_error <= kClosedFormMaxRelativeError) return std::min(cf.value, 1.0);
    }
    return upsilon_quadrature(phase, s, m, net, 0);
}

namespace {

void validate_analysis_inputs(double s, const NetworkConfig& net, const FadingConfig& fading,
                              double p_s) {
    net.validate();
    fading.validate(net);
    if (fading.altitude_dependent) {
        throw ConfigError(
            "altitude-dependent fading has no analytical model (simulation-only); use the simulator");
    }
    if (!(p_s >= 0.0 && p_s <= 1.0)) throw DomainError("stay probability must lie in [0, 1]");
    if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError("Laplace argument s must be >= 0");
}

}  // namespace

double laplace_transform(double s, const NetworkConfig& net, const FadingConfig& fading,
                         double stay_probability) {
    validate_analysis_inputs(s, net, fading, stay_probability);
    if (net.interferers == 0 || s == 0.0) return 1.0;
    const int m = fading.m_interferer;
    const double mix = stay_probability * upsilon(Phase::dwelling, s, m, net) +
                       (1.0 - stay_probability) * upsilon(Phase::moving, s, m, net);
    return std::pow(mix, net.interferers);
}

double laplace_transform_binomial_sum(double s, const NetworkConfig& net,
                                      const FadingConfig& fading, double stay_probability) {
    validate_analysis_inputs(s, net, fading, stay_probability);
    const int big_m = net.interferers;
    if (big_m == 0 || s == 0.0) return 1.0;
    const int m = fading.m_interferer;
    const double dwell = stay_probability * upsilon(Phase::dwelling, s, m, net);
    const double moving = (1.0 - stay_probability) * upsilon(Phase::moving, s, m, net);
    double sum = 0.0;
    double binom = 1.0;
    for (int n = 0; n <= big_m; ++n) {
        sum += binom * std::pow(dwell, n) * std::pow(moving, big_m - n);
        binom = binom * (big_m - n) / (n + 1);
    }
    return sum;
}

Jet laplace_jet(double s0, int order, const NetworkConfig& net, const FadingConfig& fading,
                double stay_probability) {
    validate_analysis_inputs(s0, net, fading, stay_probability);
    if (order < 0) throw DomainError("laplace_jet: order must be >= 0");
    if (net.interferers == 0) return Jet::constant(1.0, order);
    if (order > 0 && s0 == 0.0) {
        throw DomainError("laplace_jet: derivatives require s0 > 0");
    }

    const int m = fading.m_interferer;
    auto phase_jet = [&](Phase phase) {
        Jet j(order);
        j.coeff(0) = upsilon(phase, s0, m, net);
        double factorial = 1.0;
        for (int k = 1; k <= order; ++k) {
            factorial *= k;
            j.coeff(k) = upsilon_quadrature(phase, s0, m, net, k) / factorial;
        }
        return j;
    };
    const Jet mix =
        stay_probability * phase_jet(Phase::dwelling) + (1.0 - stay_probability) * phase_jet(Phase::moving);
    return mix.pow(net.interferers);
}

}  // namespace uavcov
