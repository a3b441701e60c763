#ifndef LEOSIM_GA_HPP
#define LEOSIM_GA_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "leosim/constants.hpp"

namespace leosim {

/// Graph interface used by the path solvers:
///   int vertex_count() const
///   const std::vector<int>& neighbors(int v) const
///   double edge_weight(int a, int b, double t) const   // +inf when infeasible
///   int hop_heuristic(int a, int b) const              // lower-bound hop count
template <class G>
concept RoutingGraph = requires(const G& g, int v, double t) {
    { g.vertex_count() } -> std::convertible_to<int>;
    { g.neighbors(v) } -> std::convertible_to<std::vector<int>>;
    { g.edge_weight(v, v, t) } -> std::convertible_to<double>;
    { g.hop_heuristic(v, v) } -> std::convertible_to<int>;
};

struct GaParams {
    int population_size = 40;
    int max_generations = 200;
    int stall_generations = 25;
    double crossover_rate = 0.9;
    double mutation_rate = 0.2;
    int elite_count = 2;
    std::uint64_t rng_seed = 1;

    void validate() const {
        if (population_size < 2) throw std::domain_error("GaParams: population_size < 2");
        if (elite_count >= population_size)
            throw std::domain_error("GaParams: elite_count >= population_size");
        if (crossover_rate < 0 || crossover_rate > 1 || mutation_rate < 0 ||
            mutation_rate > 1)
            throw std::domain_error("GaParams: rate out of [0,1]");
        if (max_generations < 1 || stall_generations < 1)
            throw std::domain_error("GaParams: generation counts must be positive");
    }
};

struct PathResult {
    std::vector<int> path;        // empty when unreachable
    double length_s = kInf;
    std::vector<double> arrival_times;  // t1..tp along the path

    bool reachable() const { return length_s != kInf; }
};

namespace detail {

// Time-recursion path evaluation: t_{i+1} = t_i + w(e_i, t_i).
template <RoutingGraph G>
PathResult evaluate_path(const G& g, const std::vector<int>& path, double t0) {
    PathResult r;
    r.path = path;
    r.arrival_times = {t0};
    double t = t0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        double w = g.edge_weight(path[i], path[i + 1], t);
        if (w == kInf) {
            r.arrival_times.clear();
            return r;
        }
        t += w;
        r.arrival_times.push_back(t);
    }
    r.length_s = t - t0;
    return r;
}

inline void remove_loops(std::vector<int>& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        for (std::size_t j = path.size(); j-- > i + 1;) {
            if (path[j] == path[i]) {
                path.erase(path.begin() + i + 1, path.begin() + j + 1);
                break;
            }
        }
    }
}

// Random walk from `from` to `dst`, biased toward neighbors that reduce
// the hop heuristic. Returns empty vector on failure.
template <RoutingGraph G, class Rng>
std::vector<int> biased_walk(const G& g, int from, int dst, double bias, Rng& rng) {
    std::vector<int> path{from};
    std::unordered_set<int> visited{from};
    int budget = 4 * std::max(1, g.hop_heuristic(from, dst)) + 16;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int cur = from;
    while (cur != dst && budget-- > 0) {
        std::vector<int> cand;
        for (int nb : g.neighbors(cur))
            if (!visited.count(nb)) cand.push_back(nb);
        if (cand.empty()) return {};
        int next;
        if (u01(rng) < bias) {
            next = *std::min_element(cand.begin(), cand.end(), [&](int a, int b) {
                return g.hop_heuristic(a, dst) < g.hop_heuristic(b, dst);
            });
        } else {
            next = cand[std::uniform_int_distribution<int>(0, (int)cand.size() - 1)(rng)];
        }
        path.push_back(next);
        visited.insert(next);
        cur = next;
    }
    if (cur != dst) return {};
    return path;
}

// Hop-count BFS path, ignoring weights; deterministic seed chromosome.
template <RoutingGraph G>
std::vector<int> bfs_path(const G& g, int src, int dst) {
    std::vector<int> parent(g.vertex_count(), -1);
    std::vector<int> queue{src};
    parent[src] = src;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        if (v == dst) break;
        for (int nb : g.neighbors(v))
            if (parent[nb] < 0) {
                parent[nb] = v;
                queue.push_back(nb);
            }
    }
    if (parent[dst] < 0) return {};
    std::vector<int> path;
    for (int v = dst; v != src; v = parent[v]) path.push_back(v);
    path.push_back(src);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

/// GA approximation of the time-dependent shortest path from src to dst
/// starting at t. Returns the unreachable marker (empty path, +inf)
/// when no finite-length chromosome is found.
template <RoutingGraph G>
PathResult ga_shortest_path(const G& g, int src, int dst, double t,
                            const GaParams& params) {
    params.validate();
    if (src < 0 || dst < 0 || src >= g.vertex_count() || dst >= g.vertex_count())
        throw std::domain_error("ga_shortest_path: invalid vertex");
    if (src == dst) {
        PathResult r;
        r.path = {src};
        r.length_s = 0;
        r.arrival_times = {t};
        return r;
    }

    std::mt19937_64 rng(params.rng_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    struct Individual {
        std::vector<int> path;
        double fitness = kInf;
    };
    auto eval = [&](const std::vector<int>& p) {
        return detail::evaluate_path(g, p, t).length_s;
    };

    std::vector<Individual> pop;
    if (auto seed_path = detail::bfs_path(g, src, dst); !seed_path.empty())
        pop.push_back({seed_path, eval(seed_path)});
    for (int tries = 0; (int)pop.size() < params.population_size &&
                        tries < 20 * params.population_size;
         ++tries) {
        double bias = (pop.size() % 4 == 3) ? 0.0 : 0.8;  // a few pure random walks
        auto p = detail::biased_walk(g, src, dst, bias, rng);
        if (!p.empty()) pop.push_back({p, eval(p)});
    }
    if (pop.empty()) return {};

    auto by_fitness = [](const Individual& a, const Individual& b) {
        return a.fitness < b.fitness;
    };
    std::sort(pop.begin(), pop.end(), by_fitness);

    double best = pop.front().fitness;
    int stall = 0;
    for (int gen = 0; gen < params.max_generations && stall < params.stall_generations;
         ++gen) {
        std::vector<Individual> next(pop.begin(),
                                     pop.begin() + std::min<std::size_t>(
                                                       params.elite_count, pop.size()));
        auto tournament = [&]() -> const Individual& {
            std::uniform_int_distribution<int> pick(0, (int)pop.size() - 1);
            const Individual& a = pop[pick(rng)];
            const Individual& b = pop[pick(rng)];
            return a.fitness <= b.fitness ? a : b;
        };
        while ((int)next.size() < params.population_size) {
            std::vector<int> child = tournament().path;
            if (u01(rng) < params.crossover_rate) {
                const std::vector<int>& other = tournament().path;
                // Single-point crossover at a random common intermediate VN.
                std::vector<std::pair<std::size_t, std::size_t>> common;
                for (std::size_t i = 1; i + 1 < child.size(); ++i)
                    for (std::size_t j = 1; j + 1 < other.size(); ++j)
                        if (child[i] == other[j]) common.push_back({i, j});
                if (!common.empty()) {
                    auto [ci, oj] = common[std::uniform_int_distribution<int>(
                        0, (int)common.size() - 1)(rng)];
                    child.erase(child.begin() + ci + 1, child.end());
                    child.insert(child.end(), other.begin() + oj + 1, other.end());
                }
            }
            if (u01(rng) < params.mutation_rate && child.size() >= 2) {
                // Regenerate the suffix from a random cut by random walk.
                std::size_t cut = std::uniform_int_distribution<std::size_t>(
                    0, child.size() - 2)(rng);
                auto tail = detail::biased_walk(g, child[cut], dst, 0.5, rng);
                if (!tail.empty()) {
                    child.erase(child.begin() + cut, child.end());
                    child.insert(child.end(), tail.begin(), tail.end());
                }
            }
            detail::remove_loops(child);
            if (child.front() != src || child.back() != dst) continue;
            next.push_back({std::move(child), 0});
            next.back().fitness = eval(next.back().path);
        }
        pop = std::move(next);
        std::sort(pop.begin(), pop.end(), by_fitness);
        if (pop.front().fitness < best - 1e-15) {
            best = pop.front().fitness;
            stall = 0;
        } else {
            ++stall;
        }
    }

    if (pop.front().fitness == kInf) return {};
    return detail::evaluate_path(g, pop.front().path, t);
}

struct EnumerationGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact minimum over all loop-free paths of at most max_hops edges,
/// by exhaustive enumeration (guard: 1e6 partial paths).
template <RoutingGraph G>
PathResult brute_force_shortest_path(const G& g, int src, int dst, double t,
                                     int max_hops,
                                     std::size_t guard = 1'000'000) {
    PathResult best;
    std::vector<int> path{src};
    std::vector<char> on_path(g.vertex_count(), 0);
    on_path[src] = 1;
    std::size_t expanded = 0;

    auto dfs = [&](auto&& self, int v, double arrival) -> void {
        if (++expanded > guard)
            throw EnumerationGuardExceeded("brute_force_shortest_path: guard exceeded");
        if (v == dst && arrival - t < best.length_s) {
            best = detail::evaluate_path(g, path, t);
        }
        if ((int)path.size() > max_hops) return;
        for (int nb : g.neighbors(v)) {
            if (on_path[nb]) continue;
            double w = g.edge_weight(v, nb, arrival);
            if (w == kInf || arrival + w - t >= best.length_s) continue;
            path.push_back(nb);
            on_path[nb] = 1;
            self(self, nb, arrival + w);
            on_path[nb] = 0;
            path.pop_back();
        }
    };
    dfs(dfs, src, t);
    if (!best.reachable()) {
        best = {};
        best.length_s = kInf;
    }
    return best;
}

}  // namespace leosim

#endif
