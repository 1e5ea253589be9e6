#include "uavcov/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "uavcov/cli/output.hpp"
#include "uavcov/cli/scenario.hpp"
#include "uavcov/cli/validation.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/interference.hpp"
#include "uavcov/simulator.hpp"

namespace uavcov::cli {

using nlohmann::json;

namespace {

constexpr std::string_view kSimulationOnly = "n/a (simulation-only)";

/// Maps exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const UnsupportedGeometry& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}

Scenario resolve_scenario(const CommonOptions& opt) {
    Scenario s = opt.scenario ? load_scenario(*opt.scenario) : default_scenario();
    if (opt.psi_db) s.psi_grid_db = *opt.psi_db;
    if (opt.seed) s.simulation.seed = *opt.seed;
    if (opt.replications) s.replications = *opt.replications;
    s.validate();
    return s;
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::vector<CoverageRow> analyze_rows(const Scenario& s) {
    const double p_s = s.stay_probability();
    const auto psi = s.psi_grid_linear();
    std::vector<CoverageRow> rows(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) {
        rows[j] = {s.psi_grid_db[j], psi[j], std::nullopt, p_s, s.fading.m0, s.fading.m_interferer, "ok"};
    }
    if (s.fading.altitude_dependent) {
        for (auto& r : rows) r.status = std::string(kSimulationOnly);
        return rows;
    }
    const auto sweep = coverage_sweep(psi, {1.0, s.network, s.fading, p_s});
    for (std::size_t j = 0; j < psi.size(); ++j) {
        rows[j].p_cov = sweep[j].p_cov;
        if (!sweep[j].p_cov) rows[j].status = "error: " + sweep[j].error;
    }
    return rows;
}

json rows_to_json(const std::vector<CoverageRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"psi_db", r.psi_db},
                       {"psi_linear", r.psi_linear},
                       {"p_cov", r.p_cov ? json(*r.p_cov) : json(nullptr)},
                       {"stay_probability", r.stay_probability},
                       {"m0", r.m0},
                       {"m_interferer", r.m_interferer},
                       {"status", r.status}});
    }
    return arr;
}

bool any_row_failed(const std::vector<CoverageRow>& rows) {
    for (const auto& r : rows) {
        if (r.status.starts_with("error")) return true;
    }
    return false;
}

std::string histogram_csv(const sim::CampaignResult& r) {
    std::string out;
    out.append(kHistogramCsvHeader).append("\nhistogram,bin,lower,upper,count\n");
    const double w_max = std::sqrt(r.radius_m * r.radius_m + r.height_m * r.height_m);
    auto emit = [&](const char* name, const std::vector<std::uint64_t>& counts, double hi) {
        const double n = static_cast<double>(counts.size());
        for (std::size_t b = 0; b < counts.size(); ++b) {
            out += std::string(name) + ',' + std::to_string(b) + ',' + format_number(hi * b / n) + ',' +
                   format_number(hi * (b + 1) / n) + ',' + std::to_string(counts[b]) + '\n';
        }
    };
    emit("distance_dwelling_m", r.distance_histogram_dwelling, w_max);
    emit("distance_moving_m", r.distance_histogram_moving, w_max);
    emit("altitude_dwelling_m", r.altitude_histogram_dwelling, r.height_m);
    emit("altitude_moving_m", r.altitude_histogram_moving, r.height_m);
    emit("horizontal_radius_sq_m2", r.radial_sq_histogram, r.radius_m * r.radius_m);
    for (std::size_t k = 0; k < r.dwelling_count_histogram.size(); ++k) {
        out += "dwelling_count," + std::to_string(k) + ',' + std::to_string(k) + ',' +
               std::to_string(k + 1) + ',' + std::to_string(r.dwelling_count_histogram[k]) + '\n';
    }
    return out;
}

json campaign_summary(const Scenario& s, const sim::CampaignResult& r) {
    const double p_kin = kinematic_stay_probability(s.mobility, s.network);
    const double p_s = s.stay_probability();

    std::vector<std::optional<double>> analytical(s.psi_grid_db.size());
    // The simulator handles any geometry; the analysis needs H < R.
    bool analysable = !s.fading.altitude_dependent;
    try {
        UpsilonGeometry::for_network(s.network);
    } catch (const UnsupportedGeometry&) {
        analysable = false;
    }
    if (analysable) {
        const auto sweep = coverage_sweep(r.psi_grid, {1.0, s.network, s.fading, p_s});
        for (std::size_t j = 0; j < sweep.size(); ++j) analytical[j] = sweep[j].p_cov;
    }
    json coverage = json::array();
    for (std::size_t j = 0; j < r.psi_grid.size(); ++j) {
        std::uint64_t hits = 0;
        for (const auto& b : r.batch_hits) hits += b[j];
        const auto est = r.coverage(j);
        json ana = s.fading.altitude_dependent ? json(kSimulationOnly)
                   : analytical[j]             ? json(*analytical[j])
                                               : json(nullptr);
        coverage.push_back({{"psi_db", s.psi_grid_db[j]},
                            {"psi_linear", r.psi_grid[j]},
                            {"hits", hits},
                            {"p_cov", est.mean},
                            {"standard_error", est.standard_error},
                            {"analytical", ana}});
    }

    const auto frac = r.dwelling_fraction();
    const auto pmf = stats::binomial_pmf(r.interferers, p_kin);
    json gains = json::array();
    for (const auto& [m, t] : r.gains) {
        if (t.n == 0) continue;
        const auto est = stats::from_moments(t.sum, t.sum_sq, t.n);
        gains.push_back({{"m", m}, {"samples", t.n}, {"mean", est.mean}, {"standard_error", est.standard_error}});
    }
    json hops = {{"proposals", r.hops.proposals},
                 {"rejections", r.hops.rejections},
                 {"interior_hops", r.hops.interior_hops},
                 {"expected_mean_length_m", s.mobility.mean_hop_length()}};
    if (r.hops.interior_hops > 0) {
        const auto est = stats::from_moments(r.hops.interior_length_sum, r.hops.interior_length_sum_sq,
                                             r.hops.interior_hops);
        hops["interior_mean_length_m"] = est.mean;
        hops["interior_mean_length_se_m"] = est.standard_error;
    }
    return {
        {"format", "uavcov-campaign v1"},
        {"scenario", scenario_to_json(s)},
        {"seeds", r.seeds},
        {"snapshots", r.snapshots},
        {"batches", r.batch_snapshots.size()},
        {"coverage", coverage},
        {"stay_probability",
         {{"analysis", p_s},
          {"kinematic", p_kin},
          {"simulated", std::isnan(frac.mean) ? json(nullptr) : json(frac.mean)},
          {"standard_error", std::isnan(frac.standard_error) ? json(nullptr) : json(frac.standard_error)}}},
        {"dwelling_count",
         {{"counts", r.dwelling_count_histogram},
          {"binomial_pmf", pmf},
          {"tv_distance", stats::total_variation(r.dwelling_count_frequency(), pmf)}}},
        {"hops", hops},
        {"gains", gains},
    };
}

}  // namespace

int cmd_analyze(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = resolve_scenario(opt);
        UpsilonGeometry::for_network(s.network);
        if (coverage_conditioning_warning(s.fading)) {
            err << "warning: m0 = " << s.fading.m0 << " > " << kConditioningWarningM0
                << "; the derivative sum is poorly conditioned\n";
        }
        const auto rows = analyze_rows(s);
        const std::string csv = coverage_csv(rows);
        if (opt.out) {
            ensure_directory(*opt.out);
            const json doc = {{"format", "uavcov-coverage v1"},
                              {"scenario", scenario_to_json(s)},
                              {"rows", rows_to_json(rows)}};
            write_atomically(*opt.out / "coverage.csv", csv);
            write_atomically(*opt.out / "coverage.json", doc.dump(2) + "\n");
        } else {
            out << csv;
        }
        return any_row_failed(rows) ? kExitCheckFailure : kExitOk;
    });
}

int cmd_simulate(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = resolve_scenario(opt);
        const auto psi = s.psi_grid_linear();
        const auto seeds = sim::replication_seeds(s.simulation.seed, s.replications);
        const auto result = sim::run_replications(s.network, s.fading, s.mobility, psi, s.simulation, seeds);
        const std::string summary = campaign_summary(s, result).dump(2) + "\n";
        if (opt.out) {
            ensure_directory(*opt.out);
            write_atomically(*opt.out / "summary.json", summary);
            write_atomically(*opt.out / "histograms.csv", histogram_csv(result));
        } else {
            out << summary;
        }
        return kExitOk;
    });
}

int cmd_validate(const CommonOptions& opt, double inject_fault, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario s = resolve_scenario(opt);
        ValidationOptions vo;
        vo.inject_fault = inject_fault;
        bool ok = true;
        for (const auto& check : run_validation(s, vo)) {
            out << format_check(check) << "\n";
            ok = ok && check.passed;
        }
        out << (ok ? "all checks passed" : "some checks failed") << "\n";
        return ok ? kExitOk : kExitCheckFailure;
    });
}

int cmd_sweep(const CommonOptions& opt, const std::string& parameter, const std::vector<double>& values,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scenario base = resolve_scenario(opt);
        if (values.empty()) throw ConfigError("--values must list at least one value");
        auto as_int = [&](double v) {
            if (v != std::floor(v)) throw ConfigError("--values for " + parameter + " must be integers");
            return static_cast<int>(v);
        };
        std::string csv;
        csv.append(kSweepCsvHeader).append("\nparameter,value,").append(kCoverageCsvColumns).append("\n");
        bool failed = false;
        for (double v : values) {
            Scenario s = base;
            if (parameter == "interferers") {
                s.network.interferers = as_int(v);
            } else if (parameter == "m0") {
                s.fading.m0 = as_int(v);
            } else if (parameter == "m_interferer") {
                s.fading.m_interferer = as_int(v);
            } else if (parameter == "serving_altitude_m") {
                s.network.serving_altitude_m = v;
            } else if (parameter == "stay_probability") {
                s.mobility.stay_probability_override = v;
            } else {
                throw ConfigError("unknown sweep parameter '" + parameter +
                                  "' (interferers, m0, m_interferer, serving_altitude_m, stay_probability)");
            }
            s.validate();
            UpsilonGeometry::for_network(s.network);
            const auto rows = analyze_rows(s);
            failed = failed || any_row_failed(rows);
            for (const auto& r : rows) csv += parameter + ',' + format_number(v) + ',' + coverage_csv_row(r) + '\n';
        }
        if (opt.out) {
            ensure_directory(*opt.out);
            write_atomically(*opt.out / "sweep.csv", csv);
        } else {
            out << csv;
        }
        return failed ? kExitCheckFailure : kExitOk;
    });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coverage of a ground user in a finite 3D network of mobile UAVs"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string scenario_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int replications = 0;
    std::vector<double> psi_db;
    double inject_fault = 0.0;
    std::string parameter;
    std::vector<double> values;

    auto add_common = [&](CLI::App* sub, bool with_sim) {
        sub->add_option("--scenario", scenario_path, "Scenario JSON (default: built-in scenario)");
        sub->add_option("--out", out_dir, "Output directory (default: stdout)");
        sub->add_option("--psi-db", psi_db, "Threshold grid override in dB, comma separated")->delimiter(',');
        if (with_sim) {
            sub->add_option("--seed", seed, "Base seed override");
            sub->add_option("--replications", replications, "Number of replications")->check(CLI::PositiveNumber);
        }
    };
    auto* analyze = app.add_subcommand("analyze", "Analytical coverage over the threshold grid");
    add_common(analyze, false);
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo campaign summary and histograms");
    add_common(simulate, true);
    auto* validate = app.add_subcommand("validate", "Run the invariant checks at reduced scale");
    add_common(validate, true);
    validate->add_option("--inject-fault", inject_fault,
                         "Perturb the closed-form Laplace factor by this relative amount (test hook)");
    auto* sweep = app.add_subcommand("sweep", "Analytical coverage for several values of one parameter");
    add_common(sweep, false);
    sweep->add_option("--param", parameter, "interferers | m0 | m_interferer | serving_altitude_m | stay_probability")
        ->required();
    sweep->add_option("--values", values, "Comma separated values")->delimiter(',')->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    }

    auto set_if = [](auto& field, CLI::App* sub, const char* name, auto value) {
        for (auto* o : sub->get_options()) {
            if (o->check_name(name) && o->count() > 0) field = value;
        }
    };
    CLI::App* active = app.get_subcommands().front();
    set_if(opt.scenario, active, "--scenario", std::filesystem::path(scenario_path));
    set_if(opt.out, active, "--out", std::filesystem::path(out_dir));
    set_if(opt.psi_db, active, "--psi-db", psi_db);
    set_if(opt.seed, active, "--seed", seed);
    set_if(opt.replications, active, "--replications", replications);

    if (active == analyze) return cmd_analyze(opt, out, err);
    if (active == simulate) return cmd_simulate(opt, out, err);
    if (active == validate) return cmd_validate(opt, inject_fault, out, err);
    return cmd_sweep(opt, parameter, values, out, err);
}

}  // namespace uavcov::cli
