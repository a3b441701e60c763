#ifndef LEOSIM_SYNTHETIC_HPP
#define LEOSIM_SYNTHETIC_HPP

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/ga.hpp"

namespace leosim {

/// Step function of time: value of the last piece whose start <= t.
struct StepWeight {
    std::vector<std::pair<double, double>> pieces;  // (start_t, weight), sorted

    double at(double t) const {
        double w = kInf;
        for (const auto& [s, v] : pieces) {
            if (s > t) break;
            w = v;
        }
        return w;
    }
};

/// Directed graph with piecewise-constant time-dependent edge weights;
/// satisfies the RoutingGraph interface. Used by the solver oracle
/// report and the small-instance verification suites.
struct SyntheticGraph {
    int n = 0;
    std::map<std::pair<int, int>, StepWeight> edges;
    std::vector<std::vector<int>> adj;

    explicit SyntheticGraph(int vertices) : n(vertices), adj(vertices) {}

    void add_edge(int a, int b, StepWeight w) {
        if (!edges.count({a, b})) adj[a].push_back(b);
        edges[{a, b}] = std::move(w);
    }
    void add_edge(int a, int b, double constant_w) {
        add_edge(a, b, StepWeight{{{0.0, constant_w}}});
    }

    int vertex_count() const { return n; }
    const std::vector<int>& neighbors(int v) const { return adj[v]; }
    double edge_weight(int a, int b, double t) const {
        auto it = edges.find({a, b});
        return it == edges.end() ? kInf : it->second.at(t);
    }
    int hop_heuristic(int, int) const { return 1; }
};

/// Random instance with up to `max_pieces`-piece weights; a shuffled
/// spanning chain guarantees reachability, extra edges appear in
/// symmetric pairs.
inline SyntheticGraph random_synthetic_graph(std::mt19937_64& rng, int n,
                                             int max_pieces = 3) {
    SyntheticGraph g(n);
    std::uniform_real_distribution<double> wdist(0.5, 5.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<int> pdist(1, max_pieces);

    auto random_weight = [&] {
        StepWeight w;
        int pieces = pdist(rng);
        double t = 0;
        for (int p = 0; p < pieces; ++p) {
            w.pieces.push_back({t, wdist(rng)});
            t += 1.0 + 4.0 * u01(rng);
        }
        return w;
    };

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i + 1 < n; ++i) {
        g.add_edge(order[i], order[i + 1], random_weight());
        g.add_edge(order[i + 1], order[i], random_weight());
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b && u01(rng) < 0.3 && !g.edges.count({a, b})) {
                g.add_edge(a, b, random_weight());
                g.add_edge(b, a, random_weight());
            }
    return g;
}

}  // namespace leosim

#endif
