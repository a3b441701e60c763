#ifndef LEOSIM_GRAPH_HPP
#define LEOSIM_GRAPH_HPP

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/delay.hpp"
#include "leosim/orbit.hpp"
#include "leosim/profile.hpp"
#include "leosim/traffic.hpp"
#include "leosim/zones.hpp"

namespace leosim {

enum class EdgeScenario {
    Normal,                 // both VNs singly occupied, pair in range
    EmptyVN,                // one side unoccupied: rate 0, distance inf
    SameSatelliteBoundary,  // one satellite serves both zones: rate inf, distance 0
    SelfLoop,               // handover inside one VN
    Parallel,               // multi-graph edge (either VN holds several satellites)
};

struct DynamicEdge {
    int head_vn = -1;
    int tail_vn = -1;
    EdgeScenario scenario = EdgeScenario::Normal;
    std::optional<std::pair<int, int>> satellite_pair;
    double distance_m = kInf;
};

struct NetworkConfig {
    double isl_rate_gbps = 5.0;
    double sgl_rate_gbps = 0.2;
    int channels_per_isl = 1;
    double compute_gflops = 100.0;
    double memory_gb = 8.0;
    double energy_wh = kInf;
    double energy_per_gflo_wh = 0.0;   // f(C) = kappa * C
    double spectral_efficiency = 1.0;  // unused hook; profiles store rates directly
    double result_volume_gb = 0.0;
    double max_isl_range_m = 7'800'000.0;
    double handover_lookahead_s = 60.0;  // scenario-4 probe used by edges_at
    double visibility_step_s = 10.0;
    double visibility_refine_s = 0.1;
    double visibility_horizon_s = 300.0;
    double visibility_cache_step_s = 10.0;  // 0 = exact, no cache
    double ledger_horizon_s = kInf;
    double boundary_epsilon_rad = 1e-9;
};

/// The snapshot-free dynamic network: static VN grid, time-varying
/// satellite association, and per-VN / per-VN-pair resource ledgers.
/// Graph queries are read-only; reservations mutate the ledgers
/// (single-writer contract).
class SfdnmNetwork {
  public:
    SfdnmNetwork(std::vector<OrbitSpec> orbits, ZoneGrid grid, NetworkConfig cfg,
                 PhysicalConstants pc = {})
        : orbits_(std::move(orbits)), grid_(grid), cfg_(cfg), pc_(pc) {
        for (const auto& o : orbits_) {
            double period = orbital_period(o.altitude_m, pc_);
            for (int k = 0; k < o.satellite_count; ++k) {
                sats_.push_back({pc_.earth_radius_m + o.altitude_m, o.inclination_rad,
                                 o.raan_rad,
                                 o.phase_offset_rad + kTwoPi * k / o.satellite_count,
                                 kTwoPi / period});
                mean_altitude_m_ += o.altitude_m;
            }
        }
        if (!sats_.empty()) mean_altitude_m_ /= static_cast<double>(sats_.size());
        compute_ledgers_.assign(grid_.zone_count(),
                                ResourceProfile(cfg_.compute_gflops, cfg_.ledger_horizon_s));
        sgl_ledgers_.assign(grid_.zone_count(),
                            ResourceProfile(cfg_.sgl_rate_gbps, cfg_.ledger_horizon_s));
    }

    const ZoneGrid& grid() const { return grid_; }
    const NetworkConfig& config() const { return cfg_; }
    const PhysicalConstants& constants() const { return pc_; }
    int satellite_count() const { return static_cast<int>(sats_.size()); }
    double mean_altitude_m() const { return mean_altitude_m_; }

    Vec3 satellite_position(int sat, double t) const {
        const auto& s = sats_.at(sat);
        return circular_orbit_position(s.radius_m, s.inclination_rad, s.raan_rad,
                                       s.base_phase_rad + s.rate_rad_s * t,
                                       pc_.earth_rotation_rate_rad_s * t);
    }

    ConstellationState state_at(double t) const {
        ConstellationState st;
        st.epoch_s = t;
        for (int s = 0; s < satellite_count(); ++s) {
            st.positions.push_back(satellite_position(s, t));
            st.satellite_ids.push_back(s);
        }
        return st;
    }

    AssociationMap associate_at(double t) const { return associate(state_at(t), grid_); }

    double pair_distance(int sat_a, int sat_b, double t) const {
        return distance(satellite_position(sat_a, t), satellite_position(sat_b, t));
    }

    /// Remaining in-range duration for a satellite pair starting at t,
    /// capped at the configured visibility horizon. Cached per quantized
    /// start time when visibility_cache_step_s > 0.
    double pair_visibility(int sat_a, int sat_b, double t) const {
        if (sat_a > sat_b) std::swap(sat_a, sat_b);
        double step = cfg_.visibility_cache_step_s;
        if (step <= 0) return visibility_search(sat_a, sat_b, t);
        double tb = std::floor(t / step) * step;
        std::int64_t key = (static_cast<std::int64_t>(sat_a) << 40) ^
                           (static_cast<std::int64_t>(sat_b) << 20) ^
                           static_cast<std::int64_t>(tb / step);
        auto it = visibility_cache_.find(key);
        double base;
        if (it != visibility_cache_.end()) {
            base = it->second;
        } else {
            base = visibility_search(sat_a, sat_b, tb);
            visibility_cache_.emplace(key, base);
        }
        if (base >= cfg_.visibility_horizon_s) return cfg_.visibility_horizon_s;
        return std::max(0.0, base - (t - tb));
    }

    /// Edge set realized at instant t, classified by association scenario.
    std::vector<DynamicEdge> edges_at(const AssociationMap& assoc, double t) const {
        std::vector<DynamicEdge> edges;
        AssociationMap ahead = associate_at(t + cfg_.handover_lookahead_s);
        for (int i = 0; i < grid_.zone_count(); ++i) {
            // Scenario 4: serving satellite about to exit, successor entering.
            for (int s1 : assoc.vn_to_sats[i]) {
                if (ahead.sat_to_vn[s1] == i) continue;
                for (std::size_t k = 0; k < ahead.vn_to_sats[i].size(); ++k) {
                    int s2 = ahead.vn_to_sats[i][k];
                    if (assoc.sat_to_vn[s2] != i) {
                        edges.push_back({i, i, EdgeScenario::SelfLoop,
                                         std::make_pair(s1, s2),
                                         pair_distance(s1, s2, t)});
                        break;
                    }
                }
            }
            for (int j : grid_.neighbors(i)) {
                bool i_occ = assoc.occupied(i), j_occ = assoc.occupied(j);
                if (i_occ && j_occ) {
                    bool parallel = assoc.vn_to_sats[i].size() > 1 ||
                                    assoc.vn_to_sats[j].size() > 1;
                    for (int sa : assoc.vn_to_sats[i])
                        for (int sb : assoc.vn_to_sats[j]) {
                            double d = pair_distance(sa, sb, t);
                            if (d > cfg_.max_isl_range_m) continue;
                            edges.push_back({i, j,
                                             parallel ? EdgeScenario::Parallel
                                                      : EdgeScenario::Normal,
                                             std::make_pair(sa, sb), d});
                        }
                } else if (i_occ != j_occ) {
                    int occ = i_occ ? i : j;
                    int sat = boundary_satellite(assoc, occ, i_occ ? j : i, t);
                    if (sat >= 0)
                        edges.push_back({i, j, EdgeScenario::SameSatelliteBoundary,
                                         std::make_pair(sat, sat), 0.0});
                    else
                        edges.push_back({i, j, EdgeScenario::EmptyVN, std::nullopt, kInf});
                } else {
                    edges.push_back({i, j, EdgeScenario::EmptyVN, std::nullopt, kInf});
                }
            }
        }
        return edges;
    }

    std::vector<DynamicEdge> edges_at(double t) const {
        return edges_at(associate_at(t), t);
    }

    /// Eq.-style weight of one realized edge for a subtask at instant t.
    double edge_weight(const DynamicEdge& e, const Subtask& st, double t) const {
        switch (e.scenario) {
            case EdgeScenario::EmptyVN:
                return kInf;
            case EdgeScenario::SameSatelliteBoundary:
                return 0.0;
            default:
                break;
        }
        const auto [sa, sb] = *e.satellite_pair;
        auto tc = transmission_delay(link_ledger(e.head_vn, e.tail_vn), st.volume_gb, t);
        if (tc.total_s == kInf) return kInf;
        double w = tc.total_s + propagation_delay(pair_distance(sa, sb, t), pc_);
        if (w > pair_visibility(sa, sb, t)) return kInf;
        return w;
    }

    /// Eq.-style node weight: processing delay, or +inf when the VN is
    /// unoccupied or short on memory/energy.
    double node_weight(int vn, const Subtask& st, double t) const {
        if (!associate_at(t).occupied(vn)) return kInf;
        if (st.memory_gb > cfg_.memory_gb) return kInf;
        if (cfg_.energy_per_gflo_wh * st.compute_gflo > cfg_.energy_wh) return kInf;
        auto cc = computation_delay(compute_ledgers_[vn], st.compute_gflo, t);
        return cc.total_s;
    }

    // --- resource ledgers ----------------------------------------------

    const ResourceProfile& link_ledger(int vn_a, int vn_b) const {
        return link_ledger_mut(vn_a, vn_b);
    }
    const ResourceProfile& compute_ledger(int vn) const { return compute_ledgers_[vn]; }
    const ResourceProfile& sgl_ledger(int vn) const { return sgl_ledgers_[vn]; }

    /// Occupation with zero-out semantics: whatever rate is still
    /// available over the interval is taken, so availability drops to 0.
    /// Intervals may cover waiting segments that an earlier commit
    /// already holds; only a fully double-booked interval is an error.
    void reserve_link(int vn_a, int vn_b, double start_s, double end_s) {
        link_ledger_mut(vn_a, vn_b).occupy(start_s, end_s);
    }
    void reserve_compute(int vn, double start_s, double end_s) {
        compute_ledgers_[vn].occupy(start_s, end_s);
    }
    void reserve_sgl(int vn, double start_s, double end_s) {
        sgl_ledgers_[vn].occupy(start_s, end_s);
    }

    /// Every ledger availability must stay within [0, capacity]; used by
    /// property tests after long commit sequences.
    template <class Fn>
    void for_each_ledger(Fn&& fn) const {
        for (const auto& [key, p] : link_ledgers_) fn(p);
        for (const auto& p : compute_ledgers_) fn(p);
        for (const auto& p : sgl_ledgers_) fn(p);
    }

  private:
    struct SatOrbit {
        double radius_m, inclination_rad, raan_rad, base_phase_rad, rate_rad_s;
    };

    ResourceProfile& link_ledger_mut(int vn_a, int vn_b) const {
        auto key = std::minmax(vn_a, vn_b);
        auto it = link_ledgers_.find(key);
        if (it == link_ledgers_.end())
            it = link_ledgers_
                     .emplace(key, ResourceProfile(cfg_.isl_rate_gbps,
                                                   cfg_.ledger_horizon_s))
                     .first;
        return it->second;
    }

  public:
    // Scenario 3: a satellite of `occ` sitting exactly on the boundary
    // shared with the empty zone serves both VNs.
    int boundary_satellite(const AssociationMap& assoc, int occ, int empty,
                           double t) const {
        auto [lon_min, lat_min] = grid_.zone_min(occ);
        double lon_max = lon_min + grid_.lon_width();
        double lat_max = lat_min + grid_.lat_width();
        bool ew = grid_.row_of(occ) == grid_.row_of(empty);
        for (int s : assoc.vn_to_sats[occ]) {
            auto [lon, lat] = sub_satellite_point(satellite_position(s, t));
            if (ew) {
                // West boundary is the half-open inf; east boundary belongs
                // to the neighbor, so "exactly on it" means lon == lon_min.
                double target = (grid_.col_of(empty) ==
                                 (grid_.col_of(occ) + 1) % grid_.lon_divisions)
                                    ? lon_max
                                    : lon_min;
                if (std::abs(wrap_longitude(lon - target)) < cfg_.boundary_epsilon_rad)
                    return s;
            } else {
                double target = grid_.row_of(empty) > grid_.row_of(occ) ? lat_max : lat_min;
                if (std::abs(lat - target) < cfg_.boundary_epsilon_rad) return s;
            }
        }
        return -1;
    }

  private:
    std::vector<OrbitSpec> orbits_;
    ZoneGrid grid_;
    NetworkConfig cfg_;
    PhysicalConstants pc_;
    std::vector<SatOrbit> sats_;
    double mean_altitude_m_ = 0;

    mutable std::map<std::pair<int, int>, ResourceProfile> link_ledgers_;
    std::vector<ResourceProfile> compute_ledgers_;
    std::vector<ResourceProfile> sgl_ledgers_;
    mutable std::unordered_map<std::int64_t, double> visibility_cache_;

    double visibility_search(int sat_a, int sat_b, double t) const {
        auto dist = [&](double s) { return pair_distance(sat_a, sat_b, s); };
        if (dist(t) > cfg_.max_isl_range_m) return 0.0;
        double lo = 0.0;
        while (lo + cfg_.visibility_step_s <= cfg_.visibility_horizon_s) {
            if (dist(t + lo + cfg_.visibility_step_s) > cfg_.max_isl_range_m) {
                double hi = lo + cfg_.visibility_step_s;
                while (hi - lo > cfg_.visibility_refine_s) {
                    double mid = 0.5 * (lo + hi);
                    (dist(t + mid) <= cfg_.max_isl_range_m ? lo : hi) = mid;
                }
                return lo;
            }
            lo += cfg_.visibility_step_s;
        }
        return cfg_.visibility_horizon_s;
    }
};

/// Per-subtask routing view of the network, frozen at the subtask's
/// creation instant: the association and the satellite realizing each
/// VN-to-VN link are fixed, while costs stay time-varying through the
/// live ledgers.
class SubtaskGraphView {
  public:
    SubtaskGraphView(const SfdnmNetwork& net, const Subtask& st)
        : net_(&net), st_(st), t0_(st.created_at_s), assoc_(net.associate_at(t0_)) {}

    const AssociationMap& association() const { return assoc_; }
    const Subtask& subtask() const { return st_; }
    bool occupied(int vn) const { return assoc_.occupied(vn); }

    /// Cheapest realized edge between adjacent VNs: min over parallel
    /// satellite pairs (the router's choice on multi-graph edges).
    EdgeCost edge_cost(int a, int b, double t, bool result_leg) const {
        EdgeCost best;
        if (a == b) {
            best.total_s = 0;
            return best;
        }
        if (!occupied(a) || !occupied(b)) return boundary_cost(a, b, t);
        double volume = result_leg ? net_->config().result_volume_gb : st_.volume_gb;
        auto tc = transmission_delay(net_->link_ledger(a, b), volume, t);
        if (tc.total_s == kInf) return best;
        for (int sa : assoc_.vn_to_sats[a])
            for (int sb : assoc_.vn_to_sats[b]) {
                double d = net_->pair_distance(sa, sb, t);
                if (d > net_->config().max_isl_range_m) continue;
                double prop = propagation_delay(d, net_->constants());
                double w = tc.total_s + prop;
                if (w > net_->pair_visibility(sa, sb, t)) continue;
                if (w < best.total_s) {
                    best.total_s = w;
                    best.parts = tc.parts;
                    best.parts.propagation_s = prop;
                }
            }
        return best;
    }

    /// Node weight with the scenario-4 handover folded in: when the
    /// serving satellite exits the zone inside the processing window, the
    /// raw data hops to the entering satellite; with no successor the VN
    /// cannot finish the subtask.
    NodeCost node_cost(int vn, double t) const {
        NodeCost nc;
        if (!occupied(vn)) return nc;
        const auto& cfg = net_->config();
        if (st_.memory_gb > cfg.memory_gb) return nc;
        if (cfg.energy_per_gflo_wh * st_.compute_gflo > cfg.energy_wh) return nc;
        nc = computation_delay(net_->compute_ledger(vn), st_.compute_gflo, t);
        if (nc.total_s == kInf) return nc;

        int serving = assoc_.vn_to_sats[vn].front();
        double t_end = t + nc.total_s;
        if (in_zone(serving, vn, t_end)) return nc;
        // Serving satellite leaves mid-processing; find the handover.
        double t_exit = exit_time(serving, vn, t, t_end);
        int successor = successor_satellite(vn, serving, t_exit);
        if (successor < 0) {
            nc.total_s = kInf;
            nc.parts = {};
            return nc;
        }
        auto hop = transmission_delay(net_->link_ledger(vn, vn), st_.volume_gb, t_exit);
        if (hop.total_s == kInf) {
            nc.total_s = kInf;
            nc.parts = {};
            return nc;
        }
        double prop =
            propagation_delay(net_->pair_distance(serving, successor, t_exit),
                              net_->constants());
        nc.total_s += hop.total_s + prop;
        nc.parts += hop.parts;
        nc.parts.propagation_s += prop;
        return nc;
    }

    bool adjacent(int a, int b) const {
        if (a == b) return true;
        for (int nb : net_->grid().neighbors(a))
            if (nb == b) return true;
        return false;
    }

    /// RoutingGraph adapters for the path solvers.
    class Leg {
      public:
        Leg(const SubtaskGraphView& v, bool result_leg)
            : view_(&v), result_leg_(result_leg) {}
        int vertex_count() const { return view_->net_->grid().zone_count(); }
        const std::vector<int>& neighbors(int v) const {
            return view_->neighbor_lists(v);
        }
        double edge_weight(int a, int b, double t) const {
            return view_->edge_cost(a, b, t, result_leg_).total_s;
        }
        int hop_heuristic(int a, int b) const {
            return view_->net_->grid().hop_distance(a, b);
        }

      private:
        const SubtaskGraphView* view_;
        bool result_leg_;
    };

    Leg raw_leg() const { return Leg(*this, false); }
    Leg result_leg() const { return Leg(*this, true); }

  private:
    friend class Leg;

    const std::vector<int>& neighbor_lists(int v) const {
        if (neighbor_cache_.empty())
            neighbor_cache_.resize(net_->grid().zone_count());
        auto& entry = neighbor_cache_[v];
        if (!entry) entry.emplace(net_->grid().neighbors(v));
        return *entry;
    }

    bool in_zone(int sat, int vn, double t) const {
        auto [lon, lat] = sub_satellite_point(net_->satellite_position(sat, t));
        return net_->grid().zone_index(lon, lat) == vn;
    }

    double exit_time(int sat, int vn, double lo, double hi) const {
        while (hi - lo > 0.05) {
            double mid = 0.5 * (lo + hi);
            (in_zone(sat, vn, mid) ? lo : hi) = mid;
        }
        return lo;
    }

    int successor_satellite(int vn, int leaving, double t) const {
        auto assoc = net_->associate_at(t + 1.0);
        for (int s : assoc.vn_to_sats[vn])
            if (s != leaving) return s;
        return -1;
    }

    EdgeCost boundary_cost(int a, int b, double) const {
        // Scenario 2 unless a boundary satellite serves both zones.
        EdgeCost c;
        if (occupied(a) == occupied(b)) return c;  // both empty
        int occ = occupied(a) ? a : b;
        int empty = occupied(a) ? b : a;
        auto key = std::minmax(a, b);
        auto it = boundary_cache_.find(key);
        if (it == boundary_cache_.end())
            it = boundary_cache_
                     .emplace(key, net_->boundary_satellite(assoc_, occ, empty, t0_))
                     .first;
        if (it->second >= 0) c.total_s = 0;
        return c;
    }

    const SfdnmNetwork* net_;
    Subtask st_;
    double t0_;
    AssociationMap assoc_;
    mutable std::vector<std::optional<std::vector<int>>> neighbor_cache_;
    mutable std::map<std::pair<int, int>, int> boundary_cache_;
};

}  // namespace leosim

#endif
