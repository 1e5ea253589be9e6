#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uavcov/cli/scenario.hpp"
#include "uavcov/config.hpp"
#include "uavcov/simulator.hpp"

namespace uavcov::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
};

/// "PASS name: detail", "FAIL ..." or "SKIP ...".
std::string format_check(const CheckResult& r);

// Individual checks. Each one is self-contained so the validate command and
// the acceptance binary can run them at different scales.

/// L_I(0) = 1, coverage with no interferers is 1, both distance CDFs hit 0
/// and 1 at the ends of their support, 2F1 is 1 when a = 0 or z = 0.
CheckResult check_trivial_anchors(const NetworkConfig& net);

/// Relative gap between the closed-form and quadrature Laplace factors on a
/// log-spaced s grid over [s_lo, s_hi], m in {1, 2, 3}, both phases.
/// `fault` multiplies the closed form by (1 + fault) to exercise the check.
CheckResult check_closed_form_vs_quadrature(const NetworkConfig& net, int grid_points, double s_lo,
                                            double s_hi, double tolerance, double fault = 0.0);

/// Power form vs explicit binomial sum for M = 1..max_interferers at random
/// (s, p_s) points.
CheckResult check_binomial_collapse(const NetworkConfig& net, int points, int max_interferers,
                                    double tolerance, std::uint64_t seed);

/// Jet derivatives (k = 1, 2) of L_I against central finite differences of
/// the closed-form L_I at each s in `s_points`.
CheckResult check_jet_derivatives(const NetworkConfig& net, const FadingConfig& fading,
                                  double stay_probability, std::span<const double> s_points,
                                  double tolerance);

/// KS distance of each phase's snapshot distances against the analytical
/// CDF, and chi-square of the moving-phase altitude histogram.
CheckResult check_distance_laws(const sim::PhaseSplit& split, double ks_tolerance,
                                double min_p_value);

/// |empirical - analytical| <= tolerance at every threshold.
CheckResult check_coverage_agreement(const std::string& name, const sim::CampaignResult& result,
                                     std::span<const double> analytical, double tolerance);

/// Dwelling fraction within `n_se` standard errors of p_s and the
/// dwelling-count law within `tv_tolerance` of Binomial(M, p_s).
CheckResult check_steady_state(const sim::CampaignResult& result, double stay_probability,
                               double n_se, double tv_tolerance);

/// Empirical coverage within [min(a, b) - n_se SE, max(a, b) + n_se SE] at every threshold.
CheckResult check_sandwich(const sim::CampaignResult& result, std::span<const double> bound_a,
                           std::span<const double> bound_b, double n_se);

/// Analytical coverage over the grid with the interferer fading forced to `m_interferer`.
std::vector<double> analytical_curve(const NetworkConfig& net, const FadingConfig& fading,
                                     double stay_probability, std::span<const double> psi_linear,
                                     int m_interferer);

struct ValidationOptions {
    /// Perturbs the closed-form Laplace factor by this relative amount.
    double inject_fault = 0.0;
    std::uint64_t max_snapshots = 100'000;
    unsigned workers = 0;
};

/// The acceptance checks at reduced scale on `scenario`. Checks that do not
/// apply (e.g. coverage agreement under a stay-probability override) are
/// reported as skipped.
std::vector<CheckResult> run_validation(const Scenario& scenario, const ValidationOptions& options);

}  // namespace uavcov::cli
