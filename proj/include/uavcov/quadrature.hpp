#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "uavcov/errors.hpp"

namespace uavcov::quadrature {

struct Options {
    double epsabs = 1e-12;
    double epsrel = 1e-10;
    int max_panels = 1000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int panels = 0;
};

inline constexpr int kNodes = 21;

/// 21-point Kronrod abscissae on [0, 1] (positive half, then the centre) and
/// weights; the embedded 10-point Gauss rule uses every second abscissa.
inline constexpr std::array<double, 11> kKronrodX = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodW = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGaussW = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct PanelEstimate {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
    double error = 0.0;
};

/// One Gauss-Kronrod 10/21 panel. `f(x, fx)` fills fx[i] = f(x[i]) for all 21
/// nodes in one call. Error estimate follows QUADPACK's qk21.
template <class BatchFn>
PanelEstimate gauss_kronrod_panel(BatchFn& f, double lo, double hi) {
    const double centre = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    // Node layout: [0..9] centre - h x_j, [10..19] centre + h x_j, [20] centre.
    std::array<double, kNodes> x{};
    for (int j = 0; j < 10; ++j) {
        x[j] = centre - half * kKronrodX[j];
        x[10 + j] = centre + half * kKronrodX[j];
    }
    x[20] = centre;
    std::array<double, kNodes> fx{};
    f(std::span<const double>(x), std::span<double>(fx));

    const double fc = fx[20];
    double kronrod = kKronrodW[10] * fc;
    double gauss = 0.0;
    double abs_sum = kKronrodW[10] * std::abs(fc);
    for (int j = 0; j < 10; ++j) {
        const double pair = fx[j] + fx[10 + j];
        kronrod += kKronrodW[j] * pair;
        abs_sum += kKronrodW[j] * (std::abs(fx[j]) + std::abs(fx[10 + j]));
        if (j % 2 == 1) gauss += kGaussW[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodW[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        asc += kKronrodW[j] * (std::abs(fx[j] - mean) + std::abs(fx[10 + j] - mean));
    }

    const double result = kronrod * half;
    const double resabs = abs_sum * std::abs(half);
    const double resasc = asc * std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    return {lo, hi, result, err};
}

/// Globally adaptive integration over consecutive panels [b0,b1], [b1,b2], ...
/// Bisects the panel with the largest error estimate until
/// error <= max(epsabs, epsrel |value|). Throws NumericalError on failure.
template <class BatchFn>
Result integrate(BatchFn&& f, std::span<const double> breakpoints, const Options& opt = {}) {
    if (breakpoints.size() < 2) throw DomainError("quadrature: need at least two breakpoints");
    std::vector<PanelEstimate> panels;
    panels.reserve(static_cast<std::size_t>(opt.max_panels) + breakpoints.size());
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i]) {
            panels.push_back(gauss_kronrod_panel(f, breakpoints[i], breakpoints[i + 1]));
        }
    }
    Result res;
    res.evaluations = kNodes * static_cast<int>(panels.size());

    auto totals = [&] {
        double v = 0.0, e = 0.0;
        for (const auto& p : panels) {
            v += p.value;
            e += p.error;
        }
        res.value = v;
        res.abs_error = e;
    };
    auto by_error = [](const PanelEstimate& l, const PanelEstimate& r) { return l.error < r.error; };

    totals();
    std::make_heap(panels.begin(), panels.end(), by_error);
    while (res.abs_error > std::max(opt.epsabs, opt.epsrel * std::abs(res.value))) {
        if (static_cast<int>(panels.size()) >= opt.max_panels) {
            throw NumericalError("quadrature: panel limit reached before tolerance", res.value,
                                 res.abs_error);
        }
        std::pop_heap(panels.begin(), panels.end(), by_error);
        const PanelEstimate worst = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw NumericalError("quadrature: panel cannot be bisected further", res.value,
                                 res.abs_error);
        }
        panels.push_back(gauss_kronrod_panel(f, worst.lo, mid));
        std::push_heap(panels.begin(), panels.end(), by_error);
        panels.push_back(gauss_kronrod_panel(f, mid, worst.hi));
        std::push_heap(panels.begin(), panels.end(), by_error);
        res.evaluations += 2 * kNodes;
        totals();
    }
    res.panels = static_cast<int>(panels.size());
    return res;
}

/// Scalar-integrand convenience wrapper.
template <class ScalarFn>
Result integrate_scalar(ScalarFn&& f, std::span<const double> breakpoints, const Options& opt = {}) {
    auto batch = [&f](std::span<const double> x, std::span<double> fx) {
        for (std::size_t i = 0; i < x.size(); ++i) fx[i] = f(x[i]);
    };
    return integrate(batch, breakpoints, opt);
}

}  // namespace uavcov::quadrature
