#ifndef LEOSIM_SCHEDULER_HPP
#define LEOSIM_SCHEDULER_HPP

#include <optional>
#include <vector>

#include "leosim/delay.hpp"
#include "leosim/ga.hpp"
#include "leosim/graph.hpp"
#include "leosim/traffic.hpp"

namespace leosim {

/// Joint path / computing-node optimum over a candidate set: for each
/// candidate, leg 1 on the raw-volume graph, processing at the node,
/// leg 2 on the result graph starting once processing ends.
struct P2Solution {
    int computing_vn = -1;
    PathResult leg1, leg2;
    NodeCost processing;
    double total_s = kInf;
    double t_compute_s = 0;        // t_q
    double t_compute_done_s = 0;   // t_q'

    bool feasible() const { return total_s != kInf; }
};

template <RoutingGraph G1, RoutingGraph G2, class NodeCostFn, class Solver>
P2Solution solve_p2(const G1& raw, const G2& result, NodeCostFn&& node_cost,
                    int src, int dst, double t, const std::vector<int>& candidates,
                    Solver&& solver) {
    P2Solution best;
    for (int uq : candidates) {
        PathResult l1 = solver(raw, src, uq, t);
        if (!l1.reachable()) continue;
        double tq = t + l1.length_s;
        NodeCost nc = node_cost(uq, tq);
        if (nc.total_s == kInf) continue;
        double tqp = tq + nc.total_s;
        PathResult l2 = solver(result, uq, dst, tqp);
        if (!l2.reachable()) continue;
        double total = l1.length_s + nc.total_s + l2.length_s;
        if (total < best.total_s) {
            best.computing_vn = uq;
            best.leg1 = std::move(l1);
            best.leg2 = std::move(l2);
            best.processing = nc;
            best.total_s = total;
            best.t_compute_s = tq;
            best.t_compute_done_s = tqp;
        }
    }
    return best;
}

enum class RouteMode { ComputingAware, GroundOffloading };

/// A fully evaluated route: legs, processing window, SGL delivery and
/// the reservation intervals a commit will make.
struct RoutePlan {
    Subtask subtask;
    RouteMode mode = RouteMode::ComputingAware;
    int dest_vn = -1;
    int computing_vn = -1;

    PathResult leg1;  // raw data, source -> computing node (GO: -> dest VN)
    double processing_start_s = 0;
    double processing_duration_s = 0;
    PathResult leg2;  // result, computing node -> dest VN (GO: unused)

    double sgl_start_s = 0;
    double sgl_duration_s = 0;       // transmission + downlink propagation
    double sgl_transmission_end_s = 0;

    double total_delay_s = kInf;
    DelayComponents decomposition;

    int hop_count() const {
        auto hops = [](const PathResult& p) {
            return p.path.empty() ? 0 : static_cast<int>(p.path.size()) - 1;
        };
        return hops(leg1) + hops(leg2);
    }
};

struct RouterOptions {
    GaParams ga;
    // Candidate computing nodes restricted to occupied VNs near the
    // source->destination corridor; slack widens the corridor.
    bool corridor_pruning = true;
    int corridor_slack_hops = 2;
};

struct GaSolver {
    GaParams params;
    template <RoutingGraph G>
    PathResult operator()(const G& g, int src, int dst, double t) const {
        return ga_shortest_path(g, src, dst, t, params);
    }
};

struct OracleSolver {
    int max_hops = 8;
    template <RoutingGraph G>
    PathResult operator()(const G& g, int src, int dst, double t) const {
        return brute_force_shortest_path(g, src, dst, t, max_hops);
    }
};

/// Plans and commits subtasks against a live network ledger,
/// computing-aware (Algorithm-1 style) or ground-offloading baseline.
template <class Solver = GaSolver>
class Router {
  public:
    Router(SfdnmNetwork& net, RouterOptions opts = {})
        : net_(&net), opts_(opts), solver_{opts.ga} {}

    Router(SfdnmNetwork& net, RouterOptions opts, Solver solver)
        : net_(&net), opts_(opts), solver_(std::move(solver)) {}

    std::optional<RoutePlan> route_computing_aware(const Subtask& st) {
        SubtaskGraphView view(*net_, st);
        int src = st.source_vn;
        int dst = destination_vn(st, net_->grid());
        auto candidates = candidate_nodes(view, src, dst);
        auto solver = seeded_solver();

        auto sol = solve_p2(
            view.raw_leg(), view.result_leg(),
            [&](int vn, double t) { return view.node_cost(vn, t); }, src, dst,
            st.created_at_s, candidates, solver);
        if (!sol.feasible()) return std::nullopt;

        RoutePlan plan;
        plan.subtask = st;
        plan.mode = RouteMode::ComputingAware;
        plan.dest_vn = dst;
        plan.computing_vn = sol.computing_vn;
        plan.leg1 = sol.leg1;
        plan.leg2 = sol.leg2;
        plan.processing_start_s = sol.t_compute_s;
        plan.processing_duration_s = sol.processing.total_s;
        accumulate_leg(view, plan.leg1, /*result_leg=*/false, plan.decomposition);
        plan.decomposition += sol.processing.parts;
        accumulate_leg(view, plan.leg2, /*result_leg=*/true, plan.decomposition);
        if (!attach_sgl(plan, dst, st.created_at_s + sol.total_s,
                        net_->config().result_volume_gb))
            return std::nullopt;
        plan.total_delay_s = sol.total_s + plan.sgl_duration_s;
        return plan;
    }

    std::optional<RoutePlan> route_ground_offloading(const Subtask& st) {
        SubtaskGraphView view(*net_, st);
        int src = st.source_vn;
        int dst = destination_vn(st, net_->grid());
        auto solver = seeded_solver();
        PathResult path = solver(view.raw_leg(), src, dst, st.created_at_s);
        if (!path.reachable()) return std::nullopt;

        RoutePlan plan;
        plan.subtask = st;
        plan.mode = RouteMode::GroundOffloading;
        plan.dest_vn = dst;
        plan.leg1 = path;
        accumulate_leg(view, plan.leg1, false, plan.decomposition);
        if (!attach_sgl(plan, dst, st.created_at_s + path.length_s, st.volume_gb))
            return std::nullopt;
        plan.total_delay_s = path.length_s + plan.sgl_duration_s;
        return plan;
    }

    /// Reserves leg-1 link occupancy, the computing window, and the SGL
    /// downlink; leg-2 result hops make no rate reservations.
    void commit(const RoutePlan& plan) {
        const auto& times = plan.leg1.arrival_times;
        for (std::size_t i = 0; i + 1 < plan.leg1.path.size(); ++i) {
            int a = plan.leg1.path[i], b = plan.leg1.path[i + 1];
            if (a == b) continue;
            net_->reserve_link(a, b, times[i], times[i + 1]);
        }
        if (plan.mode == RouteMode::ComputingAware)
            net_->reserve_compute(plan.computing_vn, plan.processing_start_s,
                                  plan.processing_start_s + plan.processing_duration_s);
        net_->reserve_sgl(plan.dest_vn, plan.sgl_start_s, plan.sgl_transmission_end_s);
    }

    std::vector<int> candidate_nodes(const SubtaskGraphView& view, int src,
                                     int dst) const {
        const auto& grid = net_->grid();
        std::vector<int> out;
        int base = grid.hop_distance(src, dst) + 2 * opts_.corridor_slack_hops;
        for (int vn = 0; vn < grid.zone_count(); ++vn) {
            if (!view.occupied(vn)) continue;
            if (opts_.corridor_pruning &&
                grid.hop_distance(src, vn) + grid.hop_distance(vn, dst) > base)
                continue;
            out.push_back(vn);
        }
        if (out.empty())  // corridor too tight; fall back to every occupied VN
            for (int vn = 0; vn < grid.zone_count(); ++vn)
                if (view.occupied(vn)) out.push_back(vn);
        return out;
    }

  private:
    Solver seeded_solver() {
        Solver s = solver_;
        if constexpr (requires { s.params.rng_seed; })
            s.params.rng_seed = detail::mix_seed(opts_.ga.rng_seed, ++invocation_);
        return s;
    }

    void accumulate_leg(const SubtaskGraphView& view, const PathResult& leg,
                        bool result_leg, DelayComponents& acc) const {
        for (std::size_t i = 0; i + 1 < leg.path.size(); ++i)
            acc += view
                .edge_cost(leg.path[i], leg.path[i + 1], leg.arrival_times[i],
                           result_leg)
                .parts;
    }

    // SGL downlink from the satellite above the destination zone.
    bool attach_sgl(RoutePlan& plan, int dst, double t, double volume_gb) {
        auto tc = transmission_delay(net_->sgl_ledger(dst), volume_gb, t);
        if (tc.total_s == kInf) return false;
        double altitude = net_->mean_altitude_m();
        auto assoc = net_->associate_at(t);
        if (assoc.occupied(dst)) {
            int sat = assoc.vn_to_sats[dst].front();
            altitude = net_->satellite_position(sat, t).norm() -
                       net_->constants().earth_radius_m;
        }
        double prop = propagation_delay(altitude, net_->constants());
        plan.sgl_start_s = t;
        plan.sgl_transmission_end_s = t + tc.total_s;
        plan.sgl_duration_s = tc.total_s + prop;
        DelayComponents parts = tc.parts;
        parts.sgl_transmission_s = parts.isl_transmission_s;
        parts.isl_transmission_s = 0;
        parts.propagation_s = prop;
        plan.decomposition += parts;
        return true;
    }

    SfdnmNetwork* net_;
    RouterOptions opts_;
    Solver solver_;
    std::uint64_t invocation_ = 0;
};

}  // namespace leosim

#endif
