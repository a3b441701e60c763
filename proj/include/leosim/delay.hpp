#ifndef LEOSIM_DELAY_HPP
#define LEOSIM_DELAY_HPP

#include <stdexcept>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/profile.hpp"

namespace leosim {

inline constexpr double kGbPerGB = 8.0;

/// Delay decomposition shared by edges, nodes, timelines and plans.
/// Waiting is the time spent in zero-availability segments.
struct DelayComponents {
    double isl_transmission_s = 0;
    double sgl_transmission_s = 0;
    double propagation_s = 0;
    double processing_s = 0;
    double waiting_s = 0;

    double total() const {
        return isl_transmission_s + sgl_transmission_s + propagation_s +
               processing_s + waiting_s;
    }

    DelayComponents& operator+=(const DelayComponents& o) {
        isl_transmission_s += o.isl_transmission_s;
        sgl_transmission_s += o.sgl_transmission_s;
        propagation_s += o.propagation_s;
        processing_s += o.processing_s;
        waiting_s += o.waiting_s;
        return *this;
    }
};

struct EdgeCost {
    double total_s = kInf;
    DelayComponents parts;  // isl_transmission + propagation + waiting
};

struct NodeCost {
    double total_s = kInf;
    DelayComponents parts;  // processing + waiting (+ handover hop, scenario 4)
};

/// Smallest T with the rate profile integrating to the subtask volume
/// from t; the folded-in waiting is reported alongside.
inline EdgeCost transmission_delay(const ResourceProfile& rate_gbps,
                                   double volume_gb, double t) {
    if (volume_gb < 0) throw std::domain_error("transmission_delay: negative volume");
    auto inv = rate_gbps.time_to_accumulate(t, volume_gb * kGbPerGB);
    EdgeCost c;
    if (!inv.feasible) return c;
    c.total_s = inv.duration_s;
    c.parts.isl_transmission_s = inv.duration_s - inv.stalled_s;
    c.parts.waiting_s = inv.stalled_s;
    return c;
}

inline NodeCost computation_delay(const ResourceProfile& compute_gflops,
                                  double compute_gflo, double t) {
    if (compute_gflo < 0) throw std::domain_error("computation_delay: negative work");
    auto inv = compute_gflops.time_to_accumulate(t, compute_gflo);
    NodeCost c;
    if (!inv.feasible) return c;
    c.total_s = inv.duration_s;
    c.parts.processing_s = inv.duration_s - inv.stalled_s;
    c.parts.waiting_s = inv.stalled_s;
    return c;
}

inline double propagation_delay(double distance_m,
                                const PhysicalConstants& pc = {}) {
    if (distance_m < 0) throw std::domain_error("propagation_delay: negative distance");
    return distance_m / pc.light_speed_m_s;
}

/// Hop-by-hop arrival recursion along a path with one computing node.
struct PathTimeline {
    std::vector<int> path;
    int computing_node = -1;
    std::vector<double> arrival_times;  // t1..tp, with tq and tq' both present
    double total_length_s = kInf;
    DelayComponents components;
};

/// Evaluates the timeline of `path` starting at t1, computing at
/// `computing_node`. Pre-compute hops use raw-volume edge costs, hops
/// after the computing node use result-volume costs. The graph view
/// must provide:
///   EdgeCost edge_cost(int a, int b, double t, bool result_leg)
///   NodeCost node_cost(int vn, double t)
///   bool adjacent(int a, int b)
template <class GraphView>
PathTimeline path_timeline(const GraphView& g, const std::vector<int>& path,
                           int computing_node, double t1) {
    PathTimeline tl;
    tl.path = path;
    tl.computing_node = computing_node;
    if (path.empty()) throw std::invalid_argument("path_timeline: empty path");
    std::size_t q = path.size();
    for (std::size_t i = 0; i < path.size(); ++i)
        if (path[i] == computing_node) {
            q = i;
            break;
        }
    if (q == path.size())
        throw std::invalid_argument("path_timeline: computing node not on path");
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (path[i] != path[i + 1] && !g.adjacent(path[i], path[i + 1]))
            throw std::invalid_argument("path_timeline: path not contiguous");

    double t = t1;
    tl.arrival_times.push_back(t);
    auto absorb = [&tl, &t](double w, const DelayComponents& parts) {
        if (w == kInf) {
            tl.total_length_s = kInf;
            return false;
        }
        t += w;
        tl.components += parts;
        tl.arrival_times.push_back(t);
        return true;
    };
    for (std::size_t i = 0; i + 1 <= path.size(); ++i) {
        if (i == q) {
            NodeCost nc = g.node_cost(path[i], t);
            if (!absorb(nc.total_s, nc.parts)) return tl;
        }
        if (i + 1 == path.size()) break;
        EdgeCost ec = g.edge_cost(path[i], path[i + 1], t, /*result_leg=*/i >= q);
        if (!absorb(ec.total_s, ec.parts)) return tl;
    }
    tl.total_length_s = t - t1;
    return tl;
}

}  // namespace leosim

#endif
