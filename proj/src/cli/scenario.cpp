#include "uavcov/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <type_traits>

#include "uavcov/coverage.hpp"
#include "uavcov/errors.hpp"

namespace uavcov::cli {

using nlohmann::json;

namespace {

/// Reads the keys of one JSON object, tracking which ones were consumed so
/// leftovers can be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    template <typename T>
    void read(const char* key, T& into) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end()) return;
        if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            // nlohmann would silently truncate 2.5 or wrap -1.
            const bool ok = std::is_unsigned_v<T> ? it->is_number_unsigned() : it->is_number_integer();
            if (!ok) {
                throw ConfigError(path_ + "." + key + ": expected " +
                                  (std::is_unsigned_v<T> ? "a non-negative integer" : "an integer"));
            }
        }
        try {
            into = it->template get<T>();
        } catch (const json::exception&) {
            throw ConfigError(path_ + "." + key + ": wrong type (got " + it->type_name() + ")");
        }
    }

    /// Returns the sub-object at `key`, or nullptr when absent.
    const json* child(const char* key) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    void reject_unknown() const {
        for (const auto& [key, _] : obj_.items()) {
            if (!seen_.contains(key)) throw ConfigError(path_ + ": unknown key '" + key + "'");
        }
    }

private:
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

NetworkConfig network_from_json(const json& j) {
    NetworkConfig n;
    ObjectReader r(j, "network");
    r.read("radius_m", n.radius_m);
    r.read("height_m", n.height_m);
    r.read("serving_altitude_m", n.serving_altitude_m);
    r.read("interferers", n.interferers);
    r.read("path_loss_exponent", n.path_loss_exponent);
    r.reject_unknown();
    return n;
}

FadingConfig fading_from_json(const json& j, const NetworkConfig& net) {
    FadingConfig f;
    ObjectReader r(j, "fading");
    r.read("m0", f.m0);
    r.read("m_interferer", f.m_interferer);
    r.read("altitude_dependent", f.altitude_dependent);
    if (const json* bands = r.child("bands")) {
        if (!bands->is_array()) throw ConfigError("fading.bands: expected an array");
        for (std::size_t i = 0; i < bands->size(); ++i) {
            FadingBand b;
            ObjectReader br((*bands)[i], "fading.bands[" + std::to_string(i) + "]");
            br.read("lower_m", b.lower_m);
            br.read("upper_m", b.upper_m);
            br.read("m", b.m);
            br.reject_unknown();
            f.bands.push_back(b);
        }
    }
    r.reject_unknown();
    if (f.altitude_dependent && f.bands.empty()) f.bands = FadingConfig::thirds_bands(net.height_m);
    return f;
}

MobilityConfig mobility_from_json(const json& j) {
    MobilityConfig m;
    ObjectReader r(j, "mobility");
    r.read("v_min_mps", m.v_min_mps);
    r.read("v_max_mps", m.v_max_mps);
    r.read("tau_min_s", m.tau_min_s);
    r.read("tau_max_s", m.tau_max_s);
    r.read("r_prime_m", m.r_prime_m);
    if (const json* p = r.child("stay_probability_override"); p && !p->is_null()) {
        if (!p->is_number()) throw ConfigError("mobility.stay_probability_override: expected a number or null");
        m.stay_probability_override = p->get<double>();
    }
    r.reject_unknown();
    return m;
}

void simulation_from_json(const json& j, Scenario& s) {
    ObjectReader r(j, "simulation");
    auto& c = s.simulation;
    r.read("snapshots", c.snapshots);
    r.read("warmup_steps", c.warmup_steps);
    r.read("dt_s", c.dt_s);
    r.read("stride", c.stride);
    r.read("batches", c.batches);
    r.read("seed", c.seed);
    r.read("histogram_bins", c.histogram_bins);
    r.read("replications", s.replications);
    std::string boundary(sim::to_string(c.boundary));
    r.read("boundary_rule", boundary);
    c.boundary = sim::boundary_rule_from_string(boundary);
    r.reject_unknown();
}

}  // namespace

void Scenario::validate() const {
    network.validate();
    fading.validate(network);
    mobility.validate();
    simulation.validate();
    if (replications < 1) throw ConfigError("simulation.replications must be >= 1");
    if (psi_grid_db.empty()) throw ConfigError("psi_grid_db must be non-empty");
    for (std::size_t i = 0; i < psi_grid_db.size(); ++i) {
        if (!std::isfinite(psi_grid_db[i])) {
            throw ConfigError("psi_grid_db[" + std::to_string(i) + "] must be finite");
        }
        if (i > 0 && !(psi_grid_db[i] > psi_grid_db[i - 1])) {
            throw ConfigError("psi_grid_db must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

std::vector<double> Scenario::psi_grid_linear() const {
    std::vector<double> out;
    out.reserve(psi_grid_db.size());
    for (double db : psi_grid_db) out.push_back(db_to_linear(db));
    return out;
}

Scenario default_scenario() {
    Scenario s;
    for (int db = -20; db <= 30; db += 5) s.psi_grid_db.push_back(db);
    s.simulation.snapshots = 200'000;
    return s;
}

Scenario scenario_from_json(const json& doc) {
    Scenario s = default_scenario();
    ObjectReader r(doc, "scenario");
    if (const json* j = r.child("network")) s.network = network_from_json(*j);
    if (const json* j = r.child("fading")) s.fading = fading_from_json(*j, s.network);
    if (const json* j = r.child("mobility")) s.mobility = mobility_from_json(*j);
    r.read("psi_grid_db", s.psi_grid_db);
    if (const json* j = r.child("simulation")) simulation_from_json(*j, s);
    r.reject_unknown();
    s.validate();
    return s;
}

json scenario_to_json(const Scenario& s) {
    json bands = json::array();
    for (const auto& b : s.fading.bands) {
        bands.push_back({{"lower_m", b.lower_m}, {"upper_m", b.upper_m}, {"m", b.m}});
    }
    const auto& c = s.simulation;
    return {
        {"network",
         {{"radius_m", s.network.radius_m},
          {"height_m", s.network.height_m},
          {"serving_altitude_m", s.network.serving_altitude_m},
          {"interferers", s.network.interferers},
          {"path_loss_exponent", s.network.path_loss_exponent}}},
        {"fading",
         {{"m0", s.fading.m0},
          {"m_interferer", s.fading.m_interferer},
          {"altitude_dependent", s.fading.altitude_dependent},
          {"bands", bands}}},
        {"mobility",
         {{"v_min_mps", s.mobility.v_min_mps},
          {"v_max_mps", s.mobility.v_max_mps},
          {"tau_min_s", s.mobility.tau_min_s},
          {"tau_max_s", s.mobility.tau_max_s},
          {"r_prime_m", s.mobility.r_prime_m},
          {"stay_probability_override", s.mobility.stay_probability_override
                                            ? json(*s.mobility.stay_probability_override)
                                            : json(nullptr)}}},
        {"psi_grid_db", s.psi_grid_db},
        {"simulation",
         {{"snapshots", c.snapshots},
          {"warmup_steps", c.warmup_steps},
          {"dt_s", c.dt_s},
          {"stride", c.stride},
          {"batches", c.batches},
          {"seed", c.seed},
          {"histogram_bins", c.histogram_bins},
          {"boundary_rule", std::string(sim::to_string(c.boundary))},
          {"replications", s.replications}}},
    };
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("scenario file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

}  // namespace uavcov::cli
