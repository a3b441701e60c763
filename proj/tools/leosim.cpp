// Command-line front end: single runs, parameter sweeps, workload
// replay and the small-instance solver oracle report.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leosim/leosim.hpp"

namespace {

using namespace leosim;

std::ofstream open_out(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream os(dir + "/" + name);
    if (!os) throw std::runtime_error("cannot write " + dir + "/" + name);
    return os;
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::istringstream is(csv);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stoull(item));
    return out;
}

void write_trace_csv(std::ostream& os, const std::vector<PlanRecord>& trace) {
    os << "task,subtask,created_at_s,mode,total_delay_s,isl_trans_s,sgl_trans_s,"
          "prop_s,proc_s,wait_s,hops,computing_vn,deadline_met\n";
    os << std::setprecision(12);
    for (const auto& r : trace) {
        const auto& d = r.decomposition;
        os << r.task_index << ',' << r.subtask_index << ',' << r.created_at_s << ','
           << (r.mode == RouteMode::ComputingAware ? "ca" : "go") << ','
           << r.total_delay_s << ',' << d.isl_transmission_s << ','
           << d.sgl_transmission_s << ',' << d.propagation_s << ',' << d.processing_s
           << ',' << d.waiting_s << ',' << r.hop_count << ',' << r.computing_vn << ','
           << (r.deadline_met ? 1 : 0) << '\n';
    }
}

void write_metrics_summary(std::ostream& os, const ScenarioMetrics& m) {
    auto mode = [&](const char* name, const ModeMetrics& mm) {
        os << name << ": completed " << mm.completed << ", dropped " << mm.dropped
           << ", deadline misses " << mm.deadline_misses << '\n';
        os << "  mean delay " << mm.mean_total_s << " s (isl "
           << mm.mean_components.isl_transmission_s << ", sgl "
           << mm.mean_components.sgl_transmission_s << ", prop "
           << mm.mean_components.propagation_s << ", proc "
           << mm.mean_components.processing_s << ", wait "
           << mm.mean_components.waiting_s << ")\n";
    };
    os << std::setprecision(6);
    mode("computing-aware ", m.computing_aware);
    mode("ground-offload  ", m.ground_offloading);
    os << "delay ratio (CA/GO): " << m.ratio << '\n';
    os << "subtasks counted: " << m.subtask_count << '\n';
}

int cmd_run(const std::string& config, const std::string& out, std::uint64_t seed,
            bool seed_set, bool trace_on, bool replay,
            const std::string& workload_file) {
    ScenarioConfig cfg = config.empty() ? ScenarioConfig{} : load_config(config);
    if (seed_set) cfg.seed = seed;

    std::vector<Task> workload;
    if (replay) {
        std::ifstream is(workload_file);
        if (!is) throw std::runtime_error("cannot open workload: " + workload_file);
        workload = read_workload_csv(is);
    } else {
        ZoneGrid grid = build_zone_grid(cfg.lon_divisions, cfg.lat_divisions);
        workload = generate_workload(grid, cfg.duration_s, cfg.lambda_per_vn,
                                     cfg.traffic, cfg.seed);
        auto wos = open_out(out, "workload.csv");
        write_workload_csv(wos, workload);
    }

    std::vector<PlanRecord> trace;
    auto metrics = run_workload(cfg, workload, trace_on ? &trace : nullptr);
    auto sos = open_out(out, "run_summary.txt");
    write_metrics_summary(sos, metrics);
    write_metrics_summary(std::cout, metrics);
    if (trace_on) {
        auto tos = open_out(out, "trace.csv");
        write_trace_csv(tos, trace);
    }
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out,
              const std::string& param, const std::string& values_csv,
              const std::string& seeds_csv) {
    ScenarioConfig cfg = config.empty() ? ScenarioConfig{} : load_config(config);
    auto values = parse_doubles(values_csv);
    std::vector<std::uint64_t> seeds;
    if (!seeds_csv.empty())
        seeds = parse_seeds(seeds_csv);
    else
        for (std::uint64_t s = cfg.seed; s < cfg.seed + 5; ++s) seeds.push_back(s);

    auto result = sweep(cfg, param, values, seeds);
    std::filesystem::create_directories(out);
    emit_sweep(result, out, "sweep");
    write_sweep_summary(std::cout, result);
    return 0;
}

int cmd_oracle(std::uint64_t seed, int instances, int vertices,
               const std::string& out) {
    std::mt19937_64 rng(seed);
    GaParams params;
    int within = 0, matched = 0;
    double worst = 0;
    std::ostringstream report;
    report << "instance,oracle_s,ga_s,rel_gap\n" << std::setprecision(12);
    for (int i = 0; i < instances; ++i) {
        auto g = random_synthetic_graph(rng, vertices);
        int src = 0, dst = vertices - 1;
        params.rng_seed = rng();
        auto exact = brute_force_shortest_path(g, src, dst, 0.0, vertices);
        auto ga = ga_shortest_path(g, src, dst, 0.0, params);
        double gap = (ga.length_s - exact.length_s) / exact.length_s;
        worst = std::max(worst, gap);
        if (gap <= 0.05) ++within;
        if (gap <= 1e-12) ++matched;
        report << i << ',' << exact.length_s << ',' << ga.length_s << ',' << gap << '\n';
    }
    std::cout << "oracle report: " << instances << " instances, " << vertices
              << " vertices\n"
              << "  exact matches: " << matched << "\n  within 5%: " << within
              << "\n  worst relative gap: " << worst << '\n';
    if (!out.empty()) {
        auto os = open_out(out, "oracle.csv");
        os << report.str();
    }
    return within == instances ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computing-aware LEO routing simulator"};
    app.require_subcommand(1);

    std::string config, out = ".", param, values_csv, seeds_csv, workload_file;
    std::uint64_t seed = 1;
    bool trace_on = false;
    int instances = 100, vertices = 6;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "configuration file");
        sub->add_option("--out", out, "output directory");
    };

    auto* run = app.add_subcommand("run", "run one scenario under both modes");
    add_common(run);
    auto* run_seed = run->add_option("--seed", seed, "workload seed override");
    run->add_flag("--trace", trace_on, "write per-subtask trace.csv");

    auto* sw = app.add_subcommand("sweep", "parameter sweep over values x seeds");
    add_common(sw);
    sw->add_option("--param", param, "dotted config path, e.g. network.compute_gflops")
        ->required();
    sw->add_option("--values", values_csv, "comma-separated values")->required();
    sw->add_option("--seeds", seeds_csv, "comma-separated seeds (default: 5 from config seed)");

    auto* rp = app.add_subcommand("replay", "run a previously exported workload CSV");
    add_common(rp);
    rp->add_option("--workload", workload_file, "workload CSV file")->required();
    auto* rp_seed = rp->add_option("--seed", seed, "seed override (solver randomness)");
    rp->add_flag("--trace", trace_on, "write per-subtask trace.csv");

    auto* orc = app.add_subcommand("oracle", "GA vs brute-force report on small graphs");
    orc->add_option("--seed", seed, "instance generator seed");
    orc->add_option("--instances", instances, "number of random instances");
    orc->add_option("--vertices", vertices, "vertices per instance");
    orc->add_option("--out", out, "output directory for oracle.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config, out, seed, run_seed->count() > 0, trace_on, false, "");
        if (sw->parsed()) return cmd_sweep(config, out, param, values_csv, seeds_csv);
        if (rp->parsed())
            return cmd_run(config, out, seed, rp_seed->count() > 0, trace_on, true,
                           workload_file);
        if (orc->parsed()) return cmd_oracle(seed, instances, vertices, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
