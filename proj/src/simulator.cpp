#include "uavcov/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>
#include <thread>

#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/kernels/kernels.hpp"

namespace uavcov::sim {

namespace {

int bin_index(double v, double hi, int bins) {
    const int b = static_cast<int>(v / hi * bins);
    return std::clamp(b, 0, bins - 1);
}

template <typename T>
void add_elementwise(std::vector<T>& into, const std::vector<T>& from) {
    for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
}

}  // namespace

std::string_view to_string(BoundaryRule rule) {
    return rule == BoundaryRule::stay ? "stay" : "resample";
}

BoundaryRule boundary_rule_from_string(std::string_view name) {
    if (name == "stay") return BoundaryRule::stay;
    if (name == "resample") return BoundaryRule::resample;
    throw ConfigError("unknown boundary rule '" + std::string(name) + "' (expected stay or resample)");
}

HopTally& HopTally::operator+=(const HopTally& o) {
    proposals += o.proposals;
    rejections += o.rejections;
    interior_hops += o.interior_hops;
    interior_length_sum += o.interior_length_sum;
    interior_length_sum_sq += o.interior_length_sum_sq;
    return *this;
}

MomentTally& MomentTally::operator+=(const MomentTally& o) {
    n += o.n;
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
}

MobilityModel::MobilityModel(const NetworkConfig& net, const MobilityConfig& mob,
                             BoundaryRule boundary)
    : net_(net), mob_(mob), boundary_(boundary) {
    net_.validate();
    mob_.validate();
}

UavState MobilityModel::initial_state(int id, RandomStream& rng) const {
    UavState s;
    s.id = id;
    const double r = net_.radius_m * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    s.x_m = r * std::cos(theta);
    s.y_m = r * std::sin(theta);
    s.h_m = rng.uniform(0.0, net_.height_m);
    s.motion = Moving{rng.uniform(0.0, net_.height_m), rng.uniform(mob_.v_min_mps, mob_.v_max_mps)};
    return s;
}

void MobilityModel::step(UavState& state, double dt_s, RandomStream& rng, HopTally* hops) const {
    if (!(dt_s > 0.0)) throw DomainError("step: dt must be > 0");
    double left = dt_s;
    while (left > 0.0) {
        if (auto* mv = std::get_if<Moving>(&state.motion)) {
            const double gap = mv->waypoint_m - state.h_m;
            const double travel = mv->speed_mps * left;
            if (travel < std::abs(gap)) {
                state.h_m += std::copysign(travel, gap);
                left = 0.0;
            } else {
                left -= std::abs(gap) / mv->speed_mps;
                state.h_m = mv->waypoint_m;
                state.motion = Dwelling{rng.uniform(mob_.tau_min_s, mob_.tau_max_s)};
            }
        } else {
            auto& dw = std::get<Dwelling>(state.motion);
            if (dw.remaining_s > left) {
                dw.remaining_s -= left;
                left = 0.0;
            } else {
                left -= dw.remaining_s;
                state.motion = Moving{rng.uniform(0.0, net_.height_m),
                                      rng.uniform(mob_.v_min_mps, mob_.v_max_mps)};
            }
        }
    }
    if (state.phase() == Phase::dwelling) hop(state, rng, hops);
    check_containment(state);
}

void MobilityModel::hop(UavState& state, RandomStream& rng, HopTally* hops) const {
    const double r2_max = net_.radius_m * net_.radius_m;
    const double inner = net_.radius_m - mob_.r_prime_m;
    const bool interior = inner > 0.0 && state.horizontal_sq() <= inner * inner;
    const int attempts = boundary_ == BoundaryRule::stay ? 1 : kResampleRetries;
    for (int a = 0; a < attempts; ++a) {
        const double len = mob_.r_prime_m * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const double nx = state.x_m + len * std::cos(theta);
        const double ny = state.y_m + len * std::sin(theta);
        if (hops) ++hops->proposals;
        if (nx * nx + ny * ny <= r2_max) {
            state.x_m = nx;
            state.y_m = ny;
            if (hops && interior) {
                ++hops->interior_hops;
                hops->interior_length_sum += len;
                hops->interior_length_sum_sq += len * len;
            }
            return;
        }
        if (hops) ++hops->rejections;
    }
}

void MobilityModel::check_containment(const UavState& s) const {
    if (s.horizontal_sq() > net_.radius_m * net_.radius_m || s.h_m < 0.0 || s.h_m > net_.height_m) {
        throw ConsistencyError("UAV " + std::to_string(s.id) + " left the cylinder: |z|^2 = " +
                               std::to_string(s.horizontal_sq()) + ", h = " + std::to_string(s.h_m));
    }
    if (const auto* mv = std::get_if<Moving>(&s.motion)) {
        if (mv->speed_mps < mob_.v_min_mps || mv->speed_mps > mob_.v_max_mps) {
            throw ConsistencyError("UAV " + std::to_string(s.id) + " speed out of range");
        }
    }
}

void CampaignSettings::validate() const {
    if (snapshots < 1) throw ConfigError("simulation.snapshots must be >= 1");
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) throw ConfigError("simulation.dt_s must be > 0");
    if (stride < 1) throw ConfigError("simulation.stride must be >= 1");
    if (batches < 1) throw ConfigError("simulation.batches must be >= 1");
    if (histogram_bins < 1) throw ConfigError("simulation.histogram_bins must be >= 1");
}

stats::MeanEstimate CampaignResult::coverage(std::size_t psi_index) const {
    std::vector<double> means;
    for (std::size_t b = 0; b < batch_snapshots.size(); ++b) {
        if (batch_snapshots[b] == 0) continue;
        means.push_back(static_cast<double>(batch_hits[b][psi_index]) /
                        static_cast<double>(batch_snapshots[b]));
    }
    return stats::batch_means(means);
}

stats::MeanEstimate CampaignResult::dwelling_fraction() const {
    if (interferers == 0) return {std::nan(""), std::nan("")};
    std::vector<double> means;
    for (std::size_t b = 0; b < batch_snapshots.size(); ++b) {
        if (batch_snapshots[b] == 0) continue;
        means.push_back(static_cast<double>(batch_dwelling[b]) /
                        (static_cast<double>(batch_snapshots[b]) * interferers));
    }
    return stats::batch_means(means);
}

std::vector<double> CampaignResult::dwelling_count_frequency() const {
    std::vector<double> f(dwelling_count_histogram.size(), 0.0);
    if (snapshots == 0) return f;
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = static_cast<double>(dwelling_count_histogram[i]) / static_cast<double>(snapshots);
    }
    return f;
}

CampaignResult& CampaignResult::merge(const CampaignResult& o) {
    if (psi_grid != o.psi_grid || interferers != o.interferers || radius_m != o.radius_m ||
        height_m != o.height_m || histogram_bins != o.histogram_bins ||
        batch_snapshots.size() != o.batch_snapshots.size()) {
        throw ConsistencyError("cannot merge campaigns with different shapes");
    }
    seeds.insert(seeds.end(), o.seeds.begin(), o.seeds.end());
    snapshots += o.snapshots;
    add_elementwise(batch_snapshots, o.batch_snapshots);
    for (std::size_t b = 0; b < batch_hits.size(); ++b) add_elementwise(batch_hits[b], o.batch_hits[b]);
    add_elementwise(batch_dwelling, o.batch_dwelling);
    add_elementwise(dwelling_count_histogram, o.dwelling_count_histogram);
    add_elementwise(distance_histogram_dwelling, o.distance_histogram_dwelling);
    add_elementwise(distance_histogram_moving, o.distance_histogram_moving);
    add_elementwise(altitude_histogram_dwelling, o.altitude_histogram_dwelling);
    add_elementwise(altitude_histogram_moving, o.altitude_histogram_moving);
    add_elementwise(radial_sq_histogram, o.radial_sq_histogram);
    distance_samples_dwelling.insert(distance_samples_dwelling.end(),
                                     o.distance_samples_dwelling.begin(),
                                     o.distance_samples_dwelling.end());
    distance_samples_moving.insert(distance_samples_moving.end(), o.distance_samples_moving.begin(),
                                   o.distance_samples_moving.end());
    hops += o.hops;
    for (const auto& [m, t] : o.gains) gains[m] += t;
    return *this;
}

CampaignResult run_campaign(const NetworkConfig& net, const FadingConfig& fading,
                            const MobilityConfig& mob, std::span<const double> psi_grid,
                            const CampaignSettings& settings) {
    net.validate();
    fading.validate(net);
    settings.validate();
    if (psi_grid.empty()) throw ConfigError("psi grid must be non-empty");
    const MobilityModel model(net, mob, settings.boundary);
    RandomStream rng(settings.seed);

    const int n_uav = net.interferers;
    const int bins = settings.histogram_bins;
    const auto nb = static_cast<std::size_t>(bins);
    const auto batches = static_cast<std::size_t>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(settings.batches), settings.snapshots));
    const double w_max = std::sqrt(net.radius_m * net.radius_m + net.height_m * net.height_m);
    const double r_sq = net.radius_m * net.radius_m;

    CampaignResult res;
    res.psi_grid.assign(psi_grid.begin(), psi_grid.end());
    res.interferers = n_uav;
    res.radius_m = net.radius_m;
    res.height_m = net.height_m;
    res.histogram_bins = bins;
    res.seeds = {settings.seed};
    res.batch_snapshots.assign(batches, 0);
    res.batch_hits.assign(batches, std::vector<std::uint64_t>(psi_grid.size(), 0));
    res.batch_dwelling.assign(batches, 0);
    res.dwelling_count_histogram.assign(static_cast<std::size_t>(n_uav) + 1, 0);
    res.distance_histogram_dwelling.assign(nb, 0);
    res.distance_histogram_moving.assign(nb, 0);
    res.altitude_histogram_dwelling.assign(nb, 0);
    res.altitude_histogram_moving.assign(nb, 0);
    res.radial_sq_histogram.assign(nb, 0);

    std::vector<UavState> uavs;
    uavs.reserve(static_cast<std::size_t>(n_uav));
    for (int i = 0; i < n_uav; ++i) uavs.push_back(model.initial_state(i, rng));

    for (std::uint64_t t = 0; t < settings.warmup_steps; ++t) {
        for (auto& u : uavs) model.step(u, settings.dt_s, rng);
    }

    const double alpha = net.path_loss_exponent;
    const double signal_scale = std::pow(net.serving_altitude_m, -alpha);
    std::vector<double> gain(static_cast<std::size_t>(n_uav));
    std::vector<double> dist_sq(static_cast<std::size_t>(n_uav));
    MomentTally& serving_gain = res.gains[fading.m0];

    for (std::uint64_t snap = 0; snap < settings.snapshots; ++snap) {
        for (int k = 0; k < settings.stride; ++k) {
            for (auto& u : uavs) model.step(u, settings.dt_s, rng, &res.hops);
        }
        const std::size_t batch = static_cast<std::size_t>(snap * batches / settings.snapshots);

        std::uint64_t dwelling = 0;
        for (std::size_t i = 0; i < uavs.size(); ++i) {
            const UavState& u = uavs[i];
            const double z2 = u.horizontal_sq();
            dist_sq[i] = z2 + u.h_m * u.h_m;
            const double w = std::sqrt(dist_sq[i]);
            const int m = fading.interferer_m(u.h_m);
            gain[i] = rng.unit_mean_gamma(m);
            res.gains[m].add(gain[i]);
            ++res.radial_sq_histogram[static_cast<std::size_t>(bin_index(z2, r_sq, bins))];
            const auto wb = static_cast<std::size_t>(bin_index(w, w_max, bins));
            const auto hb = static_cast<std::size_t>(bin_index(u.h_m, net.height_m, bins));
            if (u.phase() == Phase::dwelling) {
                ++dwelling;
                ++res.distance_histogram_dwelling[wb];
                ++res.altitude_histogram_dwelling[hb];
                if (res.distance_samples_dwelling.size() < settings.distance_sample_cap) {
                    res.distance_samples_dwelling.push_back(w);
                }
            } else {
                ++res.distance_histogram_moving[wb];
                ++res.altitude_histogram_moving[hb];
                if (res.distance_samples_moving.size() < settings.distance_sample_cap) {
                    res.distance_samples_moving.push_back(w);
                }
            }
        }

        double interference = 0.0;
        if (alpha == 2.0) {
            interference = kernels::interference_alpha2(gain, dist_sq);
        } else {
            for (std::size_t i = 0; i < uavs.size(); ++i) {
                interference += gain[i] * std::pow(dist_sq[i], -0.5 * alpha);
            }
        }
        const double g0 = rng.unit_mean_gamma(fading.m0);
        serving_gain.add(g0);
        // With no interferers the SIR is infinite and every threshold is met.
        const double sir = interference > 0.0 ? g0 * signal_scale / interference
                                              : std::numeric_limits<double>::infinity();

        ++res.snapshots;
        ++res.batch_snapshots[batch];
        res.batch_dwelling[batch] += dwelling;
        ++res.dwelling_count_histogram[dwelling];
        auto& hits = res.batch_hits[batch];
        for (std::size_t j = 0; j < psi_grid.size(); ++j) {
            if (sir > psi_grid[j]) ++hits[j];
        }
    }
    return res;
}

std::vector<std::uint64_t> replication_seeds(std::uint64_t base, int replications) {
    if (replications < 1) throw ConfigError("replications must be >= 1");
    std::vector<std::uint64_t> seeds;
    for (int r = 0; r < replications; ++r) {
        seeds.push_back(RandomStream::derive_seed(base, static_cast<std::uint64_t>(r)));
    }
    return seeds;
}

CampaignResult run_replications(const NetworkConfig& net, const FadingConfig& fading,
                                const MobilityConfig& mob, std::span<const double> psi_grid,
                                const CampaignSettings& settings,
                                std::span<const std::uint64_t> seeds, unsigned workers) {
    if (seeds.empty()) throw ConfigError("at least one replication seed is required");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
        throw ConfigError("replication seeds must be distinct; a reused seed duplicates a replication");
    }
    std::vector<CampaignResult> parts(seeds.size());
    std::vector<std::exception_ptr> errors(seeds.size());
    auto run = [&](std::size_t i) {
        try {
            CampaignSettings s = settings;
            s.seed = seeds[i];
            parts[i] = run_campaign(net, fading, mob, psi_grid, s);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (workers == 0) workers = default_worker_count();
    workers = std::min<unsigned>(workers, static_cast<unsigned>(seeds.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < seeds.size(); i = next++) run(i);
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    CampaignResult merged = std::move(parts.front());
    for (std::size_t i = 1; i < parts.size(); ++i) merged.merge(parts[i]);
    return merged;
}

PhaseSplit snapshot_distance_phase_split(const CampaignResult& result, double stay_probability) {
    if (result.distance_samples_dwelling.empty() || result.distance_samples_moving.empty()) {
        throw DomainError("phase split needs retained distance samples from both phases");
    }
    PhaseSplit split;
    split.dwelling_distances = result.distance_samples_dwelling;
    split.moving_distances = result.distance_samples_moving;
    const DistanceDistribution dwell(Phase::dwelling, result.radius_m, result.height_m);
    const DistanceDistribution move(Phase::moving, result.radius_m, result.height_m);
    split.ks_dwelling = stats::ks_distance(split.dwelling_distances, [&](double w) { return dwell.cdf(w); });
    split.ks_moving = stats::ks_distance(split.moving_distances, [&](double w) { return move.cdf(w); });

    split.dwelling_count_frequency = result.dwelling_count_frequency();
    split.dwelling_count_binomial = stats::binomial_pmf(result.interferers, stay_probability);
    split.tv_binomial = stats::total_variation(split.dwelling_count_frequency, split.dwelling_count_binomial);

    const int bins = result.histogram_bins;
    std::vector<double> altitude_p(static_cast<std::size_t>(bins));
    std::vector<double> uniform_p(static_cast<std::size_t>(bins), 1.0 / bins);
    const AltitudeDistribution& alt = move.altitude();
    for (int b = 0; b < bins; ++b) {
        const double lo = result.height_m * b / bins;
        const double hi = result.height_m * (b + 1) / bins;
        altitude_p[static_cast<std::size_t>(b)] = alt.cdf(hi) - alt.cdf(lo);
    }
    split.moving_altitude_chi_square = stats::chi_square(result.altitude_histogram_moving, altitude_p);
    split.radial_uniformity_chi_square = stats::chi_square(result.radial_sq_histogram, uniform_p);
    return split;
}

}  // namespace uavcov::sim
