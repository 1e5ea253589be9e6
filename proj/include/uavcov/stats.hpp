#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace uavcov::stats {

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of `samples`
/// and `cdf`. Sorts a copy of the samples.
double ks_distance(std::span<const double> samples, const std::function<double(double)>& cdf);

struct ChiSquareResult {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 0.0;
};

/// Pearson goodness-of-fit of binned counts against expected bin
/// probabilities (which should sum to 1).
ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected_probability);

/// Equal-width histogram of `samples` on [lo, hi]; values at `hi` fall in the last bin.
std::vector<std::uint64_t> histogram(std::span<const double> samples, double lo, double hi,
                                     int bins);

/// Binomial(n, p) probability mass function for k = 0..n.
std::vector<double> binomial_pmf(int n, double p);

/// Total-variation distance 0.5 * sum |p_i - q_i| (shorter input zero-padded).
double total_variation(std::span<const double> p, std::span<const double> q);

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Mean and standard error of the mean from equally weighted batch means.
MeanEstimate batch_means(std::span<const double> batch_values);

/// Mean and standard error from streamed sums (iid samples).
MeanEstimate from_moments(double sum, double sum_sq, std::uint64_t n);

}  // namespace uavcov::stats
