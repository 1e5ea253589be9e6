#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "uavcov/config.hpp"
#include "uavcov/distributions.hpp"
#include "uavcov/rng.hpp"
#include "uavcov/stats.hpp"

namespace uavcov::sim {

/// Travelling vertically toward `waypoint_m` at `speed_mps`.
struct Moving {
    double waypoint_m = 0.0;
    double speed_mps = 0.0;
    bool operator==(const Moving&) const = default;
};

/// Hovering at a waypoint for `remaining_s` more seconds.
struct Dwelling {
    double remaining_s = 0.0;
    bool operator==(const Dwelling&) const = default;
};

/// Kinematic state of one interferer.
struct UavState {
    int id = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    double h_m = 0.0;
    std::variant<Moving, Dwelling> motion;

    Phase phase() const noexcept {
        return std::holds_alternative<Dwelling>(motion) ? Phase::dwelling : Phase::moving;
    }
    double horizontal_sq() const noexcept { return x_m * x_m + y_m * y_m; }
    bool operator==(const UavState&) const = default;
};

/// What a random-walk hop does when the proposal leaves the disk.
/// `stay` rejects the hop (the uniform law on the disk stays stationary);
/// `resample` redraws up to 100 times, then stays.
enum class BoundaryRule { stay, resample };

std::string_view to_string(BoundaryRule rule);
BoundaryRule boundary_rule_from_string(std::string_view name);

inline constexpr int kResampleRetries = 100;

/// Hop bookkeeping filled by `MobilityModel::step`.
struct HopTally {
    std::uint64_t proposals = 0;
    std::uint64_t rejections = 0;
    // Accepted hops that started at least R' inside the boundary.
    std::uint64_t interior_hops = 0;
    double interior_length_sum = 0.0;
    double interior_length_sum_sq = 0.0;

    HopTally& operator+=(const HopTally& o);
    bool operator==(const HopTally&) const = default;
};

/// Mixed mobility: vertical random-waypoint legs, and during each dwell one
/// spatial random-walk hop (uniform on the disk of radius R') per time step.
class MobilityModel {
public:
    MobilityModel(const NetworkConfig& net, const MobilityConfig& mob,
                  BoundaryRule boundary = BoundaryRule::stay);

    /// Uniform in the cylinder, moving toward a fresh waypoint.
    UavState initial_state(int id, RandomStream& rng) const;

    /// Advances `state` by `dt_s` seconds. Time is consumed exactly within the
    /// step: a UAV can arrive, dwell and set off again inside one step. A hop is
    /// made when the UAV is dwelling at the end of the step.
    /// Throws ConsistencyError if the UAV ever leaves the cylinder.
    void step(UavState& state, double dt_s, RandomStream& rng, HopTally* hops = nullptr) const;

private:
    void hop(UavState& state, RandomStream& rng, HopTally* hops) const;
    void check_containment(const UavState& state) const;

    NetworkConfig net_;
    MobilityConfig mob_;
    BoundaryRule boundary_;
};

struct CampaignSettings {
    std::uint64_t snapshots = 1'000'000;
    std::uint64_t warmup_steps = 10'000;
    double dt_s = 1.0;
    int stride = 10;
    int batches = 20;
    std::uint64_t seed = 1;
    BoundaryRule boundary = BoundaryRule::stay;
    /// Per-phase cap on retained raw distance samples (0 keeps none).
    std::size_t distance_sample_cap = 0;
    int histogram_bins = 30;

    void validate() const;
    bool operator==(const CampaignSettings&) const = default;
};

struct MomentTally {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v) {
        ++n;
        sum += v;
        sum_sq += v * v;
    }
    MomentTally& operator+=(const MomentTally& o);
    bool operator==(const MomentTally&) const = default;
};

/// Raw tallies of one or more campaigns. Merging sums counts elementwise, so
/// it is associative and, apart from the order of retained raw samples,
/// order-independent.
struct CampaignResult {
    std::vector<double> psi_grid;  // linear
    int interferers = 0;
    double radius_m = 0.0;
    double height_m = 0.0;
    int histogram_bins = 0;
    std::vector<std::uint64_t> seeds;

    std::uint64_t snapshots = 0;
    std::vector<std::uint64_t> batch_snapshots;            // [batch]
    std::vector<std::vector<std::uint64_t>> batch_hits;    // [batch][psi]
    std::vector<std::uint64_t> batch_dwelling;             // UAV-snapshots dwelling, [batch]
    std::vector<std::uint64_t> dwelling_count_histogram;   // [0..M]

    std::vector<std::uint64_t> distance_histogram_dwelling;  // on [0, sqrt(R^2+H^2)]
    std::vector<std::uint64_t> distance_histogram_moving;
    std::vector<std::uint64_t> altitude_histogram_dwelling;  // on [0, H]
    std::vector<std::uint64_t> altitude_histogram_moving;
    std::vector<std::uint64_t> radial_sq_histogram;  // |z|^2 on [0, R^2]
    std::vector<double> distance_samples_dwelling;
    std::vector<double> distance_samples_moving;

    HopTally hops;
    std::map<int, MomentTally> gains;  // keyed by m (interferers and serving link)

    std::uint64_t uav_snapshots() const { return snapshots * static_cast<std::uint64_t>(interferers); }
    stats::MeanEstimate coverage(std::size_t psi_index) const;
    stats::MeanEstimate dwelling_fraction() const;
    std::vector<double> dwelling_count_frequency() const;

    /// Throws ConsistencyError when the shapes differ.
    CampaignResult& merge(const CampaignResult& other);
    bool operator==(const CampaignResult&) const = default;
};

/// One replication: M interferers launched uniform in the cylinder, warmed up,
/// then `snapshots` snapshots taken every `stride` steps. Each snapshot draws
/// fresh unit-mean gamma gains and tallies SIR > psi for every psi.
CampaignResult run_campaign(const NetworkConfig& net, const FadingConfig& fading,
                            const MobilityConfig& mob, std::span<const double> psi_grid,
                            const CampaignSettings& settings);

/// Runs one replication per seed in parallel and merges them in seed order.
/// Duplicate seeds are rejected with ConfigError.
CampaignResult run_replications(const NetworkConfig& net, const FadingConfig& fading,
                                const MobilityConfig& mob, std::span<const double> psi_grid,
                                const CampaignSettings& settings,
                                std::span<const std::uint64_t> seeds, unsigned workers = 0);

/// Seeds for `replications` independent streams derived from `base`.
std::vector<std::uint64_t> replication_seeds(std::uint64_t base, int replications);

/// Phase-conditioned distance laws and the dwelling-count law, compared with
/// the analytical distributions.
struct PhaseSplit {
    std::vector<double> dwelling_distances;
    std::vector<double> moving_distances;
    double ks_dwelling = 0.0;
    double ks_moving = 0.0;
    std::vector<double> dwelling_count_frequency;
    std::vector<double> dwelling_count_binomial;
    double tv_binomial = 0.0;
    stats::ChiSquareResult moving_altitude_chi_square;
    stats::ChiSquareResult radial_uniformity_chi_square;
};

/// Needs a campaign run with a non-zero `distance_sample_cap`.
PhaseSplit snapshot_distance_phase_split(const CampaignResult& result, double stay_probability);

}  // namespace uavcov::sim
