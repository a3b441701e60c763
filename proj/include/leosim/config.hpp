#ifndef LEOSIM_CONFIG_HPP
#define LEOSIM_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/ga.hpp"
#include "leosim/graph.hpp"
#include "leosim/traffic.hpp"

namespace leosim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full description of one simulated scenario: constellation, grid,
/// resource capacities, traffic statistics, solver parameters and run
/// control.
struct ScenarioConfig {
    // constellation
    std::vector<double> orbit_altitudes_km = {200, 300, 400, 500, 600,
                                              200, 300, 400, 500, 600};
    std::vector<int> satellites_per_orbit = {10, 12, 10, 12, 10, 12, 10, 12, 10, 12};
    double inclination_deg = 90.0;
    double inter_plane_phase_offset_rad = 0.0;

    // grid
    int lon_divisions = 12;
    int lat_divisions = 6;

    NetworkConfig network;

    // traffic
    double lambda_per_vn = 1.0 / 60.0;
    DistParams traffic;

    // router
    GaParams ga;
    bool corridor_pruning = true;
    int corridor_slack_hops = 2;

    // run control
    double duration_s = 30.0;
    double warmup_fraction = 0.1;
    std::uint64_t seed = 1;

    PhysicalConstants constants;

    std::vector<OrbitSpec> orbits() const {
        if (orbit_altitudes_km.size() != satellites_per_orbit.size())
            throw ConfigError("constellation: altitude and count lists differ in size");
        std::vector<OrbitSpec> out;
        std::size_t n = orbit_altitudes_km.size();
        for (std::size_t o = 0; o < n; ++o) {
            OrbitSpec spec;
            spec.altitude_m = orbit_altitudes_km[o] * 1000.0;
            spec.inclination_rad = inclination_deg * kPi / 180.0;
            // RAAN spread over [0, pi): polar Walker-star-like layout.
            spec.raan_rad = kPi * static_cast<double>(o) / static_cast<double>(n);
            spec.satellite_count = satellites_per_orbit[o];
            spec.phase_offset_rad = inter_plane_phase_offset_rad * static_cast<double>(o);
            out.push_back(spec);
        }
        return out;
    }

    void validate() const {
        if (orbit_altitudes_km.empty()) throw ConfigError("constellation: no orbits");
        if (orbit_altitudes_km.size() != satellites_per_orbit.size())
            throw ConfigError("constellation: altitude and count lists differ in size");
        for (double h : orbit_altitudes_km)
            if (!(h > 0)) throw ConfigError("constellation: altitude must be positive");
        for (int c : satellites_per_orbit)
            if (c < 1) throw ConfigError("constellation: satellites_per_orbit < 1");
        if (lon_divisions < 1 || lat_divisions < 1)
            throw ConfigError("grid: divisions must be >= 1");
        if (!(network.isl_rate_gbps > 0) || !(network.sgl_rate_gbps > 0) ||
            !(network.compute_gflops > 0))
            throw ConfigError("network: rates and compute capability must be positive");
        if (!(lambda_per_vn > 0)) throw ConfigError("traffic: lambda must be positive");
        if (duration_s < 0) throw ConfigError("run: duration must be non-negative");
        if (warmup_fraction < 0 || warmup_fraction >= 1)
            throw ConfigError("run: warmup_fraction must be in [0, 1)");
        ga.validate();
    }
};

namespace detail {

struct ParamTable {
    std::map<std::string, std::function<double(ScenarioConfig&)>> getters;
    std::map<std::string, std::function<void(ScenarioConfig&, double)>> setters;

    void add(const std::string& key, double ScenarioConfig::* field) {
        getters[key] = [field](ScenarioConfig& c) { return c.*field; };
        setters[key] = [field](ScenarioConfig& c, double v) { c.*field = v; };
    }
    template <class Sub>
    void add(const std::string& key, Sub ScenarioConfig::* sub, double Sub::* field) {
        getters[key] = [=](ScenarioConfig& c) { return c.*sub.*field; };
        setters[key] = [=](ScenarioConfig& c, double v) { c.*sub.*field = v; };
    }
};

inline const ParamTable& param_table() {
    static const ParamTable table = [] {
        ParamTable t;
        t.add("network.isl_rate_gbps", &ScenarioConfig::network, &NetworkConfig::isl_rate_gbps);
        t.add("network.sgl_rate_gbps", &ScenarioConfig::network, &NetworkConfig::sgl_rate_gbps);
        t.add("network.compute_gflops", &ScenarioConfig::network, &NetworkConfig::compute_gflops);
        t.add("network.memory_gb", &ScenarioConfig::network, &NetworkConfig::memory_gb);
        t.add("network.result_volume_gb", &ScenarioConfig::network, &NetworkConfig::result_volume_gb);
        t.add("network.max_isl_range_m", &ScenarioConfig::network, &NetworkConfig::max_isl_range_m);
        t.add("traffic.lambda_per_vn", &ScenarioConfig::lambda_per_vn);
        t.add("traffic.mean_subtasks", &ScenarioConfig::traffic, &DistParams::mean_subtasks);
        t.add("traffic.std_subtasks", &ScenarioConfig::traffic, &DistParams::std_subtasks);
        t.add("traffic.mean_compute_gflo", &ScenarioConfig::traffic, &DistParams::mean_compute_gflo);
        t.add("traffic.std_compute_gflo", &ScenarioConfig::traffic, &DistParams::std_compute_gflo);
        t.add("traffic.mean_volume_gb", &ScenarioConfig::traffic, &DistParams::mean_volume_gb);
        t.add("traffic.std_volume_gb", &ScenarioConfig::traffic, &DistParams::std_volume_gb);
        t.add("traffic.mean_memory_gb", &ScenarioConfig::traffic, &DistParams::mean_memory_gb);
        t.add("traffic.std_memory_gb", &ScenarioConfig::traffic, &DistParams::std_memory_gb);
        t.add("traffic.deadline1_s", &ScenarioConfig::traffic, &DistParams::deadline1_s);
        t.add("traffic.deadline2_s", &ScenarioConfig::traffic, &DistParams::deadline2_s);
        t.add("run.duration_s", &ScenarioConfig::duration_s);
        t.add("run.warmup_fraction", &ScenarioConfig::warmup_fraction);
        return t;
    }();
    return table;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace detail

/// Numeric sweep hook: dotted parameter paths over the config.
inline void set_config_param(ScenarioConfig& cfg, const std::string& path,
                             double value) {
    auto it = detail::param_table().setters.find(path);
    if (it == detail::param_table().setters.end())
        throw ConfigError("unknown parameter path: " + path);
    it->second(cfg, value);
}

inline double get_config_param(ScenarioConfig& cfg, const std::string& path) {
    auto it = detail::param_table().getters.find(path);
    if (it == detail::param_table().getters.end())
        throw ConfigError("unknown parameter path: " + path);
    return it->second(cfg);
}

/// Key-value configuration file with [section] headers; keys resolve as
/// "section.key". '#' and ';' start comments.
inline ScenarioConfig parse_config(std::istream& is) {
    ScenarioConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": bad section");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        std::string path = section.empty() ? key : section + "." + key;

        auto as_double = [&] {
            try {
                return std::stod(value);
            } catch (...) {
                throw ConfigError("line " + std::to_string(lineno) + ": bad number for " + path);
            }
        };
        if (path == "constellation.orbit_altitudes_km") {
            cfg.orbit_altitudes_km.clear();
            for (const auto& v : detail::split(value, ','))
                cfg.orbit_altitudes_km.push_back(std::stod(v));
        } else if (path == "constellation.satellites_per_orbit") {
            cfg.satellites_per_orbit.clear();
            for (const auto& v : detail::split(value, ','))
                cfg.satellites_per_orbit.push_back(std::stoi(v));
        } else if (path == "constellation.inclination_deg") {
            cfg.inclination_deg = as_double();
        } else if (path == "constellation.inter_plane_phase_offset_rad") {
            cfg.inter_plane_phase_offset_rad = as_double();
        } else if (path == "grid.lon_divisions") {
            cfg.lon_divisions = static_cast<int>(as_double());
        } else if (path == "grid.lat_divisions") {
            cfg.lat_divisions = static_cast<int>(as_double());
        } else if (path == "ga.population_size") {
            cfg.ga.population_size = static_cast<int>(as_double());
        } else if (path == "ga.max_generations") {
            cfg.ga.max_generations = static_cast<int>(as_double());
        } else if (path == "ga.stall_generations") {
            cfg.ga.stall_generations = static_cast<int>(as_double());
        } else if (path == "ga.crossover_rate") {
            cfg.ga.crossover_rate = as_double();
        } else if (path == "ga.mutation_rate") {
            cfg.ga.mutation_rate = as_double();
        } else if (path == "ga.elite_count") {
            cfg.ga.elite_count = static_cast<int>(as_double());
        } else if (path == "router.corridor_pruning") {
            cfg.corridor_pruning = value == "true" || value == "1";
        } else if (path == "router.corridor_slack_hops") {
            cfg.corridor_slack_hops = static_cast<int>(as_double());
        } else if (path == "run.seed") {
            cfg.seed = static_cast<std::uint64_t>(as_double());
        } else if (detail::param_table().setters.count(path)) {
            set_config_param(cfg, path, as_double());
        } else {
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key " + path);
        }
    }
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open config file: " + file);
    return parse_config(is);
}

}  // namespace leosim

#endif
