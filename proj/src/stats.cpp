#include "uavcov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "uavcov/errors.hpp"

namespace uavcov::stats {

double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw DomainError("ks_distance: no samples");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected_probability) {
    if (observed.size() != expected_probability.size() || observed.size() < 2) {
        throw DomainError("chi_square: need matching bins, at least two");
    }
    const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
    if (n <= 0.0) throw DomainError("chi_square: no observations");
    ChiSquareResult r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = n * expected_probability[i];
        if (!(e > 0.0)) throw DomainError("chi_square: expected count must be positive");
        const double diff = static_cast<double>(observed[i]) - e;
        r.statistic += diff * diff / e;
    }
    r.degrees_of_freedom = static_cast<int>(observed.size()) - 1;
    r.p_value = boost::math::gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic);
    return r;
}

std::vector<std::uint64_t> histogram(std::span<const double> samples, double lo, double hi,
                                     int bins) {
    if (bins < 1 || !(hi > lo)) throw DomainError("histogram: need bins >= 1 and hi > lo");
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    const double width = (hi - lo) / bins;
    for (double v : samples) {
        if (v < lo || v > hi) continue;
        const int b = std::min(bins - 1, static_cast<int>((v - lo) / width));
        ++counts[static_cast<std::size_t>(b)];
    }
    return counts;
}

std::vector<double> binomial_pmf(int n, double p) {
    if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_pmf: need n >= 0, p in [0, 1]");
    const boost::math::binomial_distribution<double> dist(n, p);
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) pmf[static_cast<std::size_t>(k)] = boost::math::pdf(dist, k);
    return pmf;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    const std::size_t n = std::max(p.size(), q.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = i < p.size() ? p[i] : 0.0;
        const double b = i < q.size() ? q[i] : 0.0;
        sum += std::abs(a - b);
    }
    return 0.5 * sum;
}

MeanEstimate batch_means(std::span<const double> batch_values) {
    if (batch_values.empty()) throw DomainError("batch_means: no batches");
    const double b = static_cast<double>(batch_values.size());
    const double mean = std::accumulate(batch_values.begin(), batch_values.end(), 0.0) / b;
    if (batch_values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : batch_values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (b - 1.0) / b)};
}

MeanEstimate from_moments(double sum, double sum_sq, std::uint64_t n) {
    if (n == 0) throw DomainError("from_moments: no samples");
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    if (n == 1) return {mean, 0.0};
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    return {mean, std::sqrt(var / nd)};
}

}  // namespace uavcov::stats
