#include "uavcov/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "uavcov/errors.hpp"
#include "uavcov/interference.hpp"

namespace uavcov {

namespace {

constexpr double kRoundOffClamp = 1e-10;

/// Neumaier's compensated summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace

void CoverageQuery::validate() const {
    if (!(psi > 0.0) || !std::isfinite(psi)) throw ConfigError("psi must be finite and > 0");
    network.validate();
    fading.validate(network);
    if (!(stay_probability >= 0.0 && stay_probability <= 1.0)) {
        throw ConfigError("stay probability must lie in [0, 1]");
    }
}

double coverage_probability(const CoverageQuery& q) {
    q.validate();
    if (q.network.interferers == 0) return 1.0;

    const int m0 = q.fading.m0;
    const double s0 = m0 * q.psi * std::pow(q.network.serving_altitude_m, q.network.path_loss_exponent);
    const Jet lt = laplace_jet(s0, m0 - 1, q.network, q.fading, q.stay_probability);

    // coeff(k) already carries the 1/k!, so term k is (-s0)^k coeff(k).
    CompensatedSum sum;
    double power = 1.0;
    for (int k = 0; k < m0; ++k) {
        sum.add(power * lt.coeff(k));
        power *= -s0;
    }
    const double p = sum.value();
    if (p >= 0.0 && p <= 1.0) return p;
    if (p < 0.0 && p > -kRoundOffClamp) return 0.0;
    if (p > 1.0 && p < 1.0 + kRoundOffClamp) return 1.0;
    throw ConsistencyError("coverage probability " + std::to_string(p) + " outside [0, 1] at psi = " +
                           std::to_string(q.psi));
}

bool coverage_conditioning_warning(const FadingConfig& fading) {
    return fading.m0 > kConditioningWarningM0;
}

unsigned default_worker_count() {
    if (const char* env = std::getenv("UAVCOV_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::vector<SweepRow> coverage_sweep(std::span<const double> psi_grid, const CoverageQuery& query,
                                     unsigned workers) {
    if (psi_grid.empty()) throw ConfigError("psi grid must be non-empty");
    std::vector<SweepRow> rows(psi_grid.size());

    auto evaluate = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.psi = psi_grid[i];
        try {
            CoverageQuery q = query;
            q.psi = psi_grid[i];
            row.p_cov = coverage_probability(q);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    if (workers == 0) workers = default_worker_count();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(psi_grid.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < psi_grid.size(); ++i) evaluate(i);
        return rows;
    }
    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < psi_grid.size(); i = next++) evaluate(i);
            });
        }
    }
    return rows;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace uavcov
