#ifndef LEOSIM_HARNESS_HPP
#define LEOSIM_HARNESS_HPP

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "leosim/config.hpp"
#include "leosim/scheduler.hpp"

namespace leosim {

/// Per-subtask plan record as consumed by traces and aggregation.
struct PlanRecord {
    int task_index, subtask_index;
    double created_at_s;
    RouteMode mode;
    double total_delay_s;
    DelayComponents decomposition;
    int hop_count;
    int computing_vn;  // -1 for ground offloading
    bool deadline_met;
};

struct ModeMetrics {
    int completed = 0;
    int dropped = 0;
    int deadline_misses = 0;
    double mean_total_s = 0;
    DelayComponents mean_components;
};

struct ScenarioMetrics {
    ModeMetrics computing_aware;
    ModeMetrics ground_offloading;
    double ratio = std::numeric_limits<double>::quiet_NaN();  // CA / GO mean delay
    int subtask_count = 0;
};

namespace detail {

class ModeAccumulator {
  public:
    void add(const RoutePlan& plan) {
        ++m_.completed;
        if (plan.total_delay_s > plan.subtask.deadline_s) ++m_.deadline_misses;
        sum_total_ += plan.total_delay_s;
        sum_components_ += plan.decomposition;
    }
    void drop() { ++m_.dropped; }

    ModeMetrics finish() const {
        ModeMetrics m = m_;
        if (m.completed > 0) {
            double n = m.completed;
            m.mean_total_s = sum_total_ / n;
            m.mean_components = sum_components_;
            m.mean_components.isl_transmission_s /= n;
            m.mean_components.sgl_transmission_s /= n;
            m.mean_components.propagation_s /= n;
            m.mean_components.processing_s /= n;
            m.mean_components.waiting_s /= n;
        }
        return m;
    }

  private:
    ModeMetrics m_;
    double sum_total_ = 0;
    DelayComponents sum_components_;
};

}  // namespace detail

/// Runs a given workload under both modes on separate ledger replicas.
/// Subtasks created during the warmup fraction are excluded from
/// aggregates.
inline ScenarioMetrics run_workload(const ScenarioConfig& cfg,
                                    const std::vector<Task>& workload,
                                    std::vector<PlanRecord>* trace = nullptr) {
    cfg.validate();
    ScenarioMetrics out;
    if (cfg.duration_s == 0) return out;

    ZoneGrid grid = build_zone_grid(cfg.lon_divisions, cfg.lat_divisions);
    double warmup_end = cfg.warmup_fraction * cfg.duration_s;

    RouterOptions ropts;
    ropts.ga = cfg.ga;
    ropts.ga.rng_seed = cfg.seed;
    ropts.corridor_pruning = cfg.corridor_pruning;
    ropts.corridor_slack_hops = cfg.corridor_slack_hops;

    for (RouteMode mode : {RouteMode::ComputingAware, RouteMode::GroundOffloading}) {
        SfdnmNetwork net(cfg.orbits(), grid, cfg.network, cfg.constants);
        Router router(net, ropts);
        detail::ModeAccumulator acc;
        for (const auto& task : workload) {
            for (const auto& st : task.subtasks) {
                std::optional<RoutePlan> plan =
                    mode == RouteMode::ComputingAware
                        ? router.route_computing_aware(st)
                        : router.route_ground_offloading(st);
                bool counted = st.created_at_s >= warmup_end;
                if (!plan) {
                    if (counted) acc.drop();
                    continue;
                }
                router.commit(*plan);
                if (!counted) continue;
                acc.add(*plan);
                if (trace)
                    trace->push_back({st.task_index, st.subtask_index, st.created_at_s,
                                      mode, plan->total_delay_s, plan->decomposition,
                                      plan->hop_count(), plan->computing_vn,
                                      plan->total_delay_s <= st.deadline_s});
            }
        }
        (mode == RouteMode::ComputingAware ? out.computing_aware
                                           : out.ground_offloading) = acc.finish();
    }
    out.subtask_count = out.computing_aware.completed + out.computing_aware.dropped;
    if (out.computing_aware.completed > 0 && out.ground_offloading.completed > 0 &&
        out.ground_offloading.mean_total_s > 0)
        out.ratio = out.computing_aware.mean_total_s / out.ground_offloading.mean_total_s;
    return out;
}

/// Generates the workload from the config's seed and runs it.
inline ScenarioMetrics run_scenario(const ScenarioConfig& cfg,
                                    std::vector<PlanRecord>* trace = nullptr) {
    cfg.validate();
    if (cfg.duration_s == 0) return {};
    ZoneGrid grid = build_zone_grid(cfg.lon_divisions, cfg.lat_divisions);
    auto workload =
        generate_workload(grid, cfg.duration_s, cfg.lambda_per_vn, cfg.traffic, cfg.seed);
    return run_workload(cfg, workload, trace);
}

struct SweepPoint {
    double value = 0;
    double mean_ratio = std::numeric_limits<double>::quiet_NaN();
    double ratio_ci_half = 0;
    double mean_delay_ca_s = 0;
    double mean_delay_go_s = 0;
    DelayComponents mean_components_ca;
    DelayComponents mean_components_go;
    int subtask_count = 0;
    int drop_count = 0;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepPoint> points;  // ordering matches the input values

    /// Linear interpolation of the swept value where the ratio crosses
    /// 1.0, if any adjacent pair brackets it.
    std::optional<double> break_even() const {
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            double a = points[i].mean_ratio, b = points[i + 1].mean_ratio;
            if ((a - 1.0) * (b - 1.0) <= 0 && a != b)
                return points[i].value +
                       (1.0 - a) / (b - a) * (points[i + 1].value - points[i].value);
        }
        return std::nullopt;
    }
};

/// Runs the scenario per (value, seed); each value's metrics are
/// averaged over the same set of seeds for both modes (paired ratios).
inline SweepResult sweep(const ScenarioConfig& base, const std::string& parameter_path,
                         const std::vector<double>& values,
                         const std::vector<std::uint64_t>& seeds) {
    if (values.empty()) throw ConfigError("sweep: no values given");
    if (seeds.empty()) throw ConfigError("sweep: no seeds given");
    SweepResult result;
    result.parameter = parameter_path;
    for (double v : values) {
        SweepPoint pt;
        pt.value = v;
        std::vector<double> ratios;
        double sr = 0, sca = 0, sgo = 0;
        DelayComponents cca, cgo;
        for (auto seed : seeds) {
            ScenarioConfig cfg = base;
            set_config_param(cfg, parameter_path, v);
            cfg.seed = seed;
            auto m = run_scenario(cfg);
            if (!std::isnan(m.ratio)) ratios.push_back(m.ratio);
            sca += m.computing_aware.mean_total_s;
            sgo += m.ground_offloading.mean_total_s;
            cca += m.computing_aware.mean_components;
            cgo += m.ground_offloading.mean_components;
            pt.subtask_count += m.subtask_count;
            pt.drop_count += m.computing_aware.dropped + m.ground_offloading.dropped;
        }
        double n = static_cast<double>(seeds.size());
        pt.mean_delay_ca_s = sca / n;
        pt.mean_delay_go_s = sgo / n;
        auto scale = [n](DelayComponents c) {
            c.isl_transmission_s /= n;
            c.sgl_transmission_s /= n;
            c.propagation_s /= n;
            c.processing_s /= n;
            c.waiting_s /= n;
            return c;
        };
        pt.mean_components_ca = scale(cca);
        pt.mean_components_go = scale(cgo);
        if (!ratios.empty()) {
            for (double r : ratios) sr += r;
            pt.mean_ratio = sr / ratios.size();
            if (ratios.size() > 1) {
                double var = 0;
                for (double r : ratios) var += (r - pt.mean_ratio) * (r - pt.mean_ratio);
                var /= (ratios.size() - 1);
                pt.ratio_ci_half = 1.96 * std::sqrt(var / ratios.size());
            }
        }
        result.points.push_back(pt);
    }
    return result;
}

inline constexpr const char* kSweepCsvHeader =
    "value,mean_ratio,ratio_ci_half,mean_delay_ca_s,mean_delay_go_s,"
    "ca_isl_trans_s,ca_sgl_trans_s,ca_prop_s,ca_proc_s,ca_wait_s,"
    "go_isl_trans_s,go_sgl_trans_s,go_prop_s,go_proc_s,go_wait_s,"
    "subtask_count,drop_count";

inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
    os << kSweepCsvHeader << '\n';
    os << std::setprecision(12);
    for (const auto& p : r.points) {
        const auto &a = p.mean_components_ca, &b = p.mean_components_go;
        os << p.value << ',' << p.mean_ratio << ',' << p.ratio_ci_half << ','
           << p.mean_delay_ca_s << ',' << p.mean_delay_go_s << ','
           << a.isl_transmission_s << ',' << a.sgl_transmission_s << ','
           << a.propagation_s << ',' << a.processing_s << ',' << a.waiting_s << ','
           << b.isl_transmission_s << ',' << b.sgl_transmission_s << ','
           << b.propagation_s << ',' << b.processing_s << ',' << b.waiting_s << ','
           << p.subtask_count << ',' << p.drop_count << '\n';
    }
}

inline void write_sweep_summary(std::ostream& os, const SweepResult& r) {
    os << "sweep parameter: " << r.parameter << '\n';
    os << std::setprecision(6);
    for (const auto& p : r.points)
        os << "  " << p.value << " -> ratio " << p.mean_ratio << " (+/- "
           << p.ratio_ci_half << "), CA " << p.mean_delay_ca_s << " s, GO "
           << p.mean_delay_go_s << " s, " << p.subtask_count << " subtasks, "
           << p.drop_count << " drops\n";
    if (auto be = r.break_even())
        os << "break-even (ratio = 1.0) at " << r.parameter << " ~= " << *be << '\n';
    else
        os << "no break-even crossing within the swept range\n";
}

inline void emit_sweep(const SweepResult& r, const std::string& out_dir,
                       const std::string& stem) {
    auto open = [&](const std::string& name) {
        std::ofstream os(out_dir + "/" + name);
        if (!os) throw std::runtime_error("cannot write " + out_dir + "/" + name);
        return os;
    };
    auto csv = open(stem + ".csv");
    write_sweep_csv(csv, r);
    auto txt = open(stem + ".txt");
    write_sweep_summary(txt, r);
}

}  // namespace leosim

#endif
