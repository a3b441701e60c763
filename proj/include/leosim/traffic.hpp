#ifndef LEOSIM_TRAFFIC_HPP
#define LEOSIM_TRAFFIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/zones.hpp"

namespace leosim {

/// The routing unit: one subtask with its resource needs and target.
struct Subtask {
    int task_index = 0;
    int subtask_index = 0;
    double created_at_s = 0;
    int source_vn = 0;
    double compute_gflo = 0;
    double volume_gb = 0;
    double memory_gb = 0;
    double deadline_s = 0;
    double dest_lon_rad = 0;
    double dest_lat_rad = 0;
};

struct Task {
    int source_vn = 0;
    double arrival_s = 0;
    std::vector<Subtask> subtasks;
};

/// Mean/std pairs for the log-normally distributed subtask magnitudes.
/// Interpreted as the moments of the variable itself; log-space
/// parameters are derived by moment matching.
struct DistParams {
    double mean_subtasks = 3, std_subtasks = 1;
    double mean_compute_gflo = 80, std_compute_gflo = 2;
    double mean_volume_gb = 0.1, std_volume_gb = 0.02;
    double mean_memory_gb = 0.1, std_memory_gb = 0.02;
    double deadline1_s = 10, deadline2_s = 60;
};

namespace detail {

// Moment-matched log-normal: mean m, std s of the variable itself.
struct LogNormal {
    double mu, sigma;
    LogNormal(double m, double s) {
        if (!(m > 0)) throw std::domain_error("log-normal mean must be positive");
        double v = std::log(1.0 + (s * s) / (m * m));
        sigma = std::sqrt(v);
        mu = std::log(m) - 0.5 * v;
    }
    template <class Rng>
    double sample(Rng& rng) const {
        if (sigma == 0) return std::exp(mu);
        std::normal_distribution<double> n(mu, sigma);
        return std::exp(n(rng));
    }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

}  // namespace detail

/// Per-VN Poisson arrivals with log-normal subtask magnitudes, sorted by
/// arrival time. Identical seeds reproduce identical workloads.
inline std::vector<Task> generate_workload(const ZoneGrid& grid, double duration_s,
                                           double lambda_per_vn,
                                           const DistParams& p,
                                           std::uint64_t seed) {
    if (!(duration_s > 0)) throw std::domain_error("generate_workload: duration <= 0");
    if (!(lambda_per_vn > 0)) throw std::domain_error("generate_workload: lambda <= 0");
    detail::LogNormal n_dist(p.mean_subtasks, p.std_subtasks);
    detail::LogNormal c_dist(p.mean_compute_gflo, p.std_compute_gflo);
    detail::LogNormal v_dist(p.mean_volume_gb, p.std_volume_gb);
    detail::LogNormal s_dist(p.mean_memory_gb, p.std_memory_gb);

    std::vector<Task> tasks;
    for (int vn = 0; vn < grid.zone_count(); ++vn) {
        std::mt19937_64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(vn)));
        std::exponential_distribution<double> gap(lambda_per_vn);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double t = gap(rng);
        int k = 0;
        while (t < duration_s) {
            Task task;
            task.source_vn = vn;
            task.arrival_s = t;
            int n = std::max(1, static_cast<int>(std::llround(n_dist.sample(rng))));
            double dlon = -kPi + kTwoPi * u01(rng);
            double dlat = -kPi / 2 + kPi * u01(rng);
            for (int l = 0; l < n; ++l) {
                Subtask st;
                st.task_index = k;
                st.subtask_index = l;
                st.created_at_s = t;
                st.source_vn = vn;
                st.compute_gflo = c_dist.sample(rng);
                st.volume_gb = v_dist.sample(rng);
                st.memory_gb = s_dist.sample(rng);
                st.deadline_s = (u01(rng) < 0.5) ? p.deadline1_s : p.deadline2_s;
                st.dest_lon_rad = dlon;
                st.dest_lat_rad = dlat;
                task.subtasks.push_back(st);
            }
            tasks.push_back(std::move(task));
            ++k;
            t += gap(rng);
        }
    }
    std::stable_sort(tasks.begin(), tasks.end(),
                     [](const Task& a, const Task& b) { return a.arrival_s < b.arrival_s; });
    return tasks;
}

inline int destination_vn(const Subtask& st, const ZoneGrid& grid) {
    return grid.zone_index(st.dest_lon_rad, st.dest_lat_rad);
}

inline constexpr const char* kWorkloadCsvHeader =
    "task,subtask,arrival_s,source_vn,compute_gflo,volume_gb,memory_gb,"
    "deadline_s,dest_lon_rad,dest_lat_rad";

inline void write_workload_csv(std::ostream& os, const std::vector<Task>& tasks) {
    os << kWorkloadCsvHeader << '\n';
    os.precision(17);
    for (const auto& task : tasks)
        for (const auto& st : task.subtasks)
            os << st.task_index << ',' << st.subtask_index << ',' << st.created_at_s
               << ',' << st.source_vn << ',' << st.compute_gflo << ',' << st.volume_gb
               << ',' << st.memory_gb << ',' << st.deadline_s << ','
               << st.dest_lon_rad << ',' << st.dest_lat_rad << '\n';
}

inline std::vector<Task> read_workload_csv(std::istream& is) {
    std::vector<Task> tasks;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("workload csv: empty file");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Subtask st;
        char comma;
        ls >> st.task_index >> comma >> st.subtask_index >> comma >> st.created_at_s >>
            comma >> st.source_vn >> comma >> st.compute_gflo >> comma >> st.volume_gb >>
            comma >> st.memory_gb >> comma >> st.deadline_s >> comma >> st.dest_lon_rad >>
            comma >> st.dest_lat_rad;
        if (!ls) throw std::runtime_error("workload csv: malformed row: " + line);
        // Rows of one task are contiguous (export order).
        if (!tasks.empty() && tasks.back().source_vn == st.source_vn &&
            tasks.back().arrival_s == st.created_at_s &&
            tasks.back().subtasks.front().task_index == st.task_index) {
            tasks.back().subtasks.push_back(st);
        } else {
            Task task;
            task.source_vn = st.source_vn;
            task.arrival_s = st.created_at_s;
            task.subtasks.push_back(st);
            tasks.push_back(std::move(task));
        }
    }
    return tasks;
}

}  // namespace leosim

#endif
