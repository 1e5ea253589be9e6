#pragma once

#include "uavcov/config.hpp"
#include "uavcov/distributions.hpp"
#include "uavcov/jet.hpp"
#include "uavcov/quadrature.hpp"

namespace uavcov {

/// Integration limits and density coefficients of the alpha = 2 closed forms,
/// in the squared-distance variable y = w^2:
/// a1 = 0, a2 = H^2, a3 = R^2, a4 = R^2 + H^2;
/// ell1 = ell2 = 2/H, ell3 = 6/H^2, ell4 = 4/H^3, ell5 = 6R^2/H^2.
struct UpsilonGeometry {
    double radius_m = 0.0;
    double height_m = 0.0;
    double a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
    double ell1 = 0.0, ell2 = 0.0, ell3 = 0.0, ell4 = 0.0, ell5 = 0.0;

    /// Throws UnsupportedGeometry unless H < R.
    static UpsilonGeometry for_network(const NetworkConfig& net);
};

/// (ell / (2 R^2)) * integral_a^b y^(kappa/2 - 1) (1 + m y / s)^-l dy,
/// in closed form through 2F1(l, kappa/2; kappa/2 + 1; -m y / s).
/// kappa in {1..5}; s = 0 returns the s -> 0+ limit.
double integral_I(int l, double a, double b, double ell, int kappa, double s, int m,
                  double radius_m);

/// (ell / (2 R^2)) * integral_{R^2}^{R^2+H^2} (y - R^2)^(kappa/2) (1 + m y / s)^-l dy,
/// in closed form through 2F1(l, kappa/2 + 1; kappa/2 + 2; -H^2 / (R^2 + s/m)).
/// kappa in {1, 3}; s = 0 returns the s -> 0+ limit.
double integral_J(int l, double ell, int kappa, double s, int m, double radius_m,
                  double height_m);

/// Closed-form Laplace factor E_W[(1 + s W^-2 / m)^-m] of one interferer in
/// `phase`, path-loss exponent 2. No fallback: at very large s the
/// alternating binomial sum loses relative accuracy.
double upsilon_closed_form(Phase phase, double s, int m, const NetworkConfig& net);

/// k-th s-derivative of the Laplace factor by adaptive quadrature over the
/// phase's distance pdf (any path-loss exponent):
///   (-1)^k (m)_k m^-k E_W[W^(-alpha k) (1 + s W^-alpha / m)^-(m+k)].
double upsilon_quadrature(Phase phase, double s, int m, const NetworkConfig& net,
                          int derivative_order = 0, const quadrature::Options& options = {});

/// Laplace factor used by the analysis: closed form for alpha = 2 (falling back
/// to quadrature where the closed form is ill-conditioned), quadrature otherwise.
double upsilon(Phase phase, double s, int m, const NetworkConfig& net);

/// Laplace transform of the aggregate interference,
/// [p_s Y_dwell(s) + (1 - p_s) Y_moving(s)]^M.
double laplace_transform(double s, const NetworkConfig& net, const FadingConfig& fading,
                         double stay_probability);

/// The same quantity as the explicit binomial sum over the number of dwelling
/// interferers. Kept as an oracle for `laplace_transform`.
double laplace_transform_binomial_sum(double s, const NetworkConfig& net,
                                      const FadingConfig& fading, double stay_probability);

/// Taylor coefficients of the Laplace transform at s0 up to `order`. The
/// value term uses `upsilon`; derivative terms use `upsilon_quadrature`.
/// The per-interferer mixture is raised to the M-th power as a series.
Jet laplace_jet(double s0, int order, const NetworkConfig& net, const FadingConfig& fading,
                double stay_probability);

}  // namespace uavcov
