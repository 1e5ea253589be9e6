#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uavcov/config.hpp"

namespace uavcov {

/// One coverage evaluation. `psi` is the SIR threshold in linear scale.
struct CoverageQuery {
    double psi = 1.0;
    NetworkConfig network;
    FadingConfig fading;
    double stay_probability = 0.5;

    void validate() const;
};

/// Pr[SIR > psi] for Nakagami-m serving and interfering links:
///   sum_{k < m0} (-s0)^k / k! * L_I^(k)(s0),  s0 = m0 psi h0^alpha.
double coverage_probability(const CoverageQuery& query);

/// m0 above this makes the derivative sum poorly conditioned.
inline constexpr int kConditioningWarningM0 = 8;
bool coverage_conditioning_warning(const FadingConfig& fading);

struct SweepRow {
    double psi = 0.0;
    std::optional<double> p_cov;
    std::string error;  // empty when p_cov is set
};

/// Evaluates `coverage_probability` at every threshold of `psi_grid` (linear),
/// using `workers` threads (0 = UAVCOV_WORKERS or hardware concurrency).
/// Rows come back in grid order; per-point failures are reported inline.
std::vector<SweepRow> coverage_sweep(std::span<const double> psi_grid, const CoverageQuery& query,
                                     unsigned workers = 0);

/// Worker count from UAVCOV_WORKERS, else hardware concurrency (>= 1).
unsigned default_worker_count();

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace uavcov
