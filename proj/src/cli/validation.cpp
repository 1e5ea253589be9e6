#include "uavcov/cli/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uavcov/coverage.hpp"
#include "uavcov/distributions.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/interference.hpp"
#include "uavcov/rng.hpp"
#include "uavcov/special_functions.hpp"

namespace uavcov::cli {

namespace {

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

CheckResult skipped(std::string name, std::string why) {
    return {std::move(name), true, true, std::move(why)};
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

std::string format_check(const CheckResult& r) {
    const char* tag = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
    return std::string(tag) + " " + r.name + ": " + r.detail;
}

CheckResult check_trivial_anchors(const NetworkConfig& net) {
    CheckResult r{"trivial anchors", true, false, ""};
    std::vector<std::string> failures;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };
    const FadingConfig fading;
    expect(laplace_transform(0.0, net, fading, 0.5) == 1.0, "L_I(0) != 1");
    NetworkConfig empty = net;
    empty.interferers = 0;
    for (double psi : {1e-3, 1.0, 1e3}) {
        expect(coverage_probability({psi, empty, fading, 0.5}) == 1.0, "P_cov(M = 0) != 1");
    }
    for (Phase ph : {Phase::dwelling, Phase::moving}) {
        const DistanceDistribution d(ph, net);
        expect(d.cdf(0.0) == 0.0, std::string(to_string(ph)) + " F(0) != 0");
        expect(d.cdf(d.max_distance()) == 1.0, std::string(to_string(ph)) + " F(w_max) != 1");
    }
    for (double z : {-0.3, -5.0, -1e4}) expect(hyp2f1({0, 1.5, 2.5, z}) == 1.0, "2F1(a = 0) != 1");
    for (int a : {1, 3, 7}) expect(hyp2f1({a, 1.5, 2.5, 0.0}) == 1.0, "2F1(z = 0) != 1");
    r.passed = failures.empty();
    if (r.passed) {
        r.detail = "all exact";
    } else {
        for (const auto& f : failures) r.detail += (r.detail.empty() ? "" : "; ") + f;
    }
    return r;
}

CheckResult check_closed_form_vs_quadrature(const NetworkConfig& net, int grid_points, double s_lo,
                                            double s_hi, double tolerance, double fault) {
    double worst = 0.0;
    std::string where;
    for (int i = 0; i < grid_points; ++i) {
        const double t = grid_points > 1 ? static_cast<double>(i) / (grid_points - 1) : 0.0;
        const double s = s_lo * std::pow(s_hi / s_lo, t);
        for (int m = 1; m <= 3; ++m) {
            for (Phase ph : {Phase::dwelling, Phase::moving}) {
                const double closed = upsilon_closed_form(ph, s, m, net) * (1.0 + fault);
                const double quad = upsilon_quadrature(ph, s, m, net);
                const double gap = relative_gap(closed, quad);
                if (gap > worst) {
                    worst = gap;
                    where = fmt("s = %.4g, m = %d, %s", s, m, std::string(to_string(ph)).c_str());
                }
            }
        }
    }
    return {"closed form vs quadrature", worst <= tolerance, false,
            fmt("max relative gap %.3e at %s (tolerance %.1e, %d s points)", worst, where.c_str(),
                tolerance, grid_points)};
}

CheckResult check_binomial_collapse(const NetworkConfig& net, int points, int max_interferers,
                                    double tolerance, std::uint64_t seed) {
    RandomStream rng(seed);
    const FadingConfig fading;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = std::pow(10.0, rng.uniform(-2.0, 6.0));
        const double p = rng.uniform();
        for (int m_count = 1; m_count <= max_interferers; ++m_count) {
            NetworkConfig n = net;
            n.interferers = m_count;
            const double power = laplace_transform(s, n, fading, p);
            const double sum = laplace_transform_binomial_sum(s, n, fading, p);
            worst = std::max(worst, relative_gap(power, sum));
        }
    }
    return {"binomial collapse", worst <= tolerance, false,
            fmt("max relative gap %.3e over %d points, M = 1..%d (tolerance %.1e)", worst, points,
                max_interferers, tolerance)};
}

CheckResult check_jet_derivatives(const NetworkConfig& net, const FadingConfig& fading,
                                  double stay_probability, std::span<const double> s_points,
                                  double tolerance) {
    auto lt = [&](double s) { return laplace_transform(s, net, fading, stay_probability); };
    double worst = 0.0;
    std::string where;
    for (double s : s_points) {
        const Jet jet = laplace_jet(s, 2, net, fading, stay_probability);
        // First derivative: second-order central difference with a small step.
        const double d1 = 1e-5 * s;
        const double fd1 = (lt(s + d1) - lt(s - d1)) / (2.0 * d1);
        // Second derivative: fourth-order five-point stencil. Truncation goes
        // as (d / s)^4 and rounding as eps L / (d^2 L''); L'' << L at small s,
        // so the step has to be fairly large.
        const double d2 = 1e-2 * s;
        const double fd2 = (-lt(s + 2 * d2) + 16 * lt(s + d2) - 30 * lt(s) + 16 * lt(s - d2) -
                            lt(s - 2 * d2)) /
                           (12.0 * d2 * d2);
        const double g1 = relative_gap(jet.derivative(1), fd1);
        const double g2 = relative_gap(jet.derivative(2), fd2);
        if (g1 > worst) {
            worst = g1;
            where = fmt("k = 1, s = %.4g", s);
        }
        if (g2 > worst) {
            worst = g2;
            where = fmt("k = 2, s = %.4g", s);
        }
    }
    return {"jet derivatives vs finite differences", worst <= tolerance, false,
            fmt("max relative gap %.3e at %s (M = %d, m = %d, tolerance %.1e)", worst, where.c_str(),
                net.interferers, fading.m_interferer, tolerance)};
}

CheckResult check_distance_laws(const sim::PhaseSplit& split, double ks_tolerance, double min_p_value) {
    const double p = split.moving_altitude_chi_square.p_value;
    const bool ok = split.ks_dwelling < ks_tolerance && split.ks_moving < ks_tolerance && p > min_p_value;
    return {"distance and altitude laws", ok, false,
            fmt("KS dwelling %.4f (n = %zu), KS moving %.4f (n = %zu), tolerance %.4f; "
                "moving altitude chi2 = %.1f on %d dof, p = %.3f (need > %.2f)",
                split.ks_dwelling, split.dwelling_distances.size(), split.ks_moving,
                split.moving_distances.size(), ks_tolerance,
                split.moving_altitude_chi_square.statistic,
                split.moving_altitude_chi_square.degrees_of_freedom, p, min_p_value)};
}

CheckResult check_coverage_agreement(const std::string& name, const sim::CampaignResult& result,
                                     std::span<const double> analytical, double tolerance) {
    double worst = 0.0;
    std::ostringstream detail;
    for (std::size_t j = 0; j < analytical.size(); ++j) {
        const auto est = result.coverage(j);
        const double gap = std::abs(est.mean - analytical[j]);
        worst = std::max(worst, gap);
        detail << fmt("%s%.2f dB: sim %.4f +- %.4f, analysis %.4f", j ? "; " : "",
                      linear_to_db(result.psi_grid[j]), est.mean, est.standard_error, analytical[j]);
    }
    detail << fmt(" | max gap %.4f (tolerance %.3f, %llu snapshots)", worst, tolerance,
                  static_cast<unsigned long long>(result.snapshots));
    return {name, worst <= tolerance, false, detail.str()};
}

CheckResult check_steady_state(const sim::CampaignResult& result, double stay_probability,
                               double n_se, double tv_tolerance) {
    const auto frac = result.dwelling_fraction();
    const double z = std::abs(frac.mean - stay_probability) / frac.standard_error;
    const auto pmf = stats::binomial_pmf(result.interferers, stay_probability);
    const double tv = stats::total_variation(result.dwelling_count_frequency(), pmf);
    const bool ok = z <= n_se && tv < tv_tolerance;
    return {"steady-state mobility", ok, false,
            fmt("dwelling fraction %.5f +- %.5f vs p_s %.5f (%.2f SE, limit %.1f); "
                "TV to Binomial(%d, p_s) %.5f (limit %.3f)",
                frac.mean, frac.standard_error, stay_probability, z, n_se, result.interferers, tv,
                tv_tolerance)};
}

CheckResult check_sandwich(const sim::CampaignResult& result, std::span<const double> bound_a,
                           std::span<const double> bound_b, double n_se) {
    bool ok = true;
    std::ostringstream detail;
    for (std::size_t j = 0; j < bound_a.size(); ++j) {
        const auto est = result.coverage(j);
        const double lo = std::min(bound_a[j], bound_b[j]);
        const double hi = std::max(bound_a[j], bound_b[j]);
        const bool in = est.mean >= lo - n_se * est.standard_error &&
                        est.mean <= hi + n_se * est.standard_error;
        ok = ok && in;
        detail << fmt("%s%.2f dB: %.4f <= %.4f +- %.4f <= %.4f%s", j ? "; " : "",
                      linear_to_db(result.psi_grid[j]), lo, est.mean, est.standard_error, hi,
                      in ? "" : " (outside)");
    }
    return {"altitude-dependent fading sandwich", ok, false, detail.str()};
}

std::vector<double> analytical_curve(const NetworkConfig& net, const FadingConfig& fading,
                                     double stay_probability, std::span<const double> psi_linear,
                                     int m_interferer) {
    FadingConfig f = fading;
    f.altitude_dependent = false;
    f.bands.clear();
    f.m_interferer = m_interferer;
    std::vector<double> out;
    for (const auto& row : coverage_sweep(psi_linear, {1.0, net, f, stay_probability})) {
        if (!row.p_cov) throw NumericalError("analytical coverage failed: " + row.error, 0.0, 0.0);
        out.push_back(*row.p_cov);
    }
    return out;
}

std::vector<CheckResult> run_validation(const Scenario& scenario, const ValidationOptions& options) {
    scenario.validate();
    const NetworkConfig& net = scenario.network;
    UpsilonGeometry::for_network(net);  // geometry guard before any work
    std::vector<CheckResult> out;

    out.push_back(check_trivial_anchors(net));
    if (net.is_free_space()) {
        out.push_back(check_closed_form_vs_quadrature(net, 12, 1e-2, 1e6, 1e-8, options.inject_fault));
    } else {
        out.push_back(skipped("closed form vs quadrature", "closed forms need path_loss_exponent = 2"));
    }
    out.push_back(check_binomial_collapse(net, 5, std::clamp(net.interferers, 1, 10), 1e-13,
                                          scenario.simulation.seed));

    const double p_s = scenario.stay_probability();
    const double p_kin = kinematic_stay_probability(scenario.mobility, net);
    FadingConfig analytic_fading = scenario.fading;
    analytic_fading.altitude_dependent = false;
    analytic_fading.bands.clear();
    if (net.interferers > 0) {
        const std::array<double, 3> s_points = {10.0, 1e3, 1e5};
        out.push_back(check_jet_derivatives(net, analytic_fading, p_s, s_points, 1e-5));
    } else {
        out.push_back(skipped("jet derivatives vs finite differences", "no interferers"));
    }

    if (net.interferers == 0) {
        out.push_back(skipped("simulation checks", "no interferers"));
        return out;
    }
    sim::CampaignSettings settings = scenario.simulation;
    settings.snapshots = std::min(settings.snapshots, options.max_snapshots);
    settings.distance_sample_cap = settings.snapshots;
    const auto psi = scenario.psi_grid_linear();
    const auto seeds = sim::replication_seeds(settings.seed, scenario.replications);
    const auto result = sim::run_replications(net, scenario.fading, scenario.mobility, psi, settings,
                                              seeds, options.workers);

    // The simulator follows the kinematics, so mobility checks use the
    // kinematic stay probability even when the analysis is overridden.
    out.push_back(check_distance_laws(sim::snapshot_distance_phase_split(result, p_kin), 0.01, 0.01));
    out.push_back(check_steady_state(result, p_kin, 3.0, 0.02));

    if (scenario.mobility.stay_probability_override) {
        out.push_back(skipped("analysis vs simulation",
                              "stay_probability_override decouples the analysis from the kinematics"));
    } else if (scenario.fading.altitude_dependent) {
        int m_lo = scenario.fading.max_interferer_m();
        for (const auto& b : scenario.fading.bands) m_lo = std::min(m_lo, b.m);
        const auto lo = analytical_curve(net, scenario.fading, p_s, psi, m_lo);
        const auto hi = analytical_curve(net, scenario.fading, p_s, psi, scenario.fading.max_interferer_m());
        out.push_back(check_sandwich(result, lo, hi, 2.0));
    } else {
        const auto ana = analytical_curve(net, scenario.fading, p_s, psi, scenario.fading.m_interferer);
        out.push_back(check_coverage_agreement("analysis vs simulation", result, ana, 0.01));
    }
    return out;
}

}  // namespace uavcov::cli
