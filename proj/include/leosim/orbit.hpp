#ifndef LEOSIM_ORBIT_HPP
#define LEOSIM_ORBIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "leosim/constants.hpp"

namespace leosim {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

/// One circular orbital plane of a constellation.
struct OrbitSpec {
    double altitude_m = 0;
    double inclination_rad = 0;
    double raan_rad = 0;
    int satellite_count = 0;
    double phase_offset_rad = 0;
};

/// Propagated positions of the whole constellation at one instant,
/// Earth-centered Earth-fixed meters.
struct ConstellationState {
    double epoch_s = 0;
    std::vector<Vec3> positions;
    std::vector<int> satellite_ids;

    std::size_t size() const { return positions.size(); }
};

inline double orbital_period(double altitude_m, const PhysicalConstants& pc = {}) {
    if (!(altitude_m > 0))
        throw std::domain_error("orbital_period: altitude must be positive");
    double r = pc.earth_radius_m + altitude_m;
    return kTwoPi * std::sqrt(r * r * r / pc.mu());
}

// Position on a circular orbit: argument of latitude u, then rotate by
// inclination about x and RAAN about z, finally into the Earth-fixed
// frame by -we*t about z.
inline Vec3 circular_orbit_position(double radius_m, double inclination_rad,
                                    double raan_rad, double arg_lat_rad,
                                    double earth_rotation_rad) {
    double cu = std::cos(arg_lat_rad), su = std::sin(arg_lat_rad);
    double ci = std::cos(inclination_rad), si = std::sin(inclination_rad);
    // In-plane -> inertial.
    double xi = cu;
    double yi = su * ci;
    double zi = su * si;
    double co = std::cos(raan_rad), so = std::sin(raan_rad);
    double xr = co * xi - so * yi;
    double yr = so * xi + co * yi;
    // Inertial -> Earth-fixed.
    double cg = std::cos(earth_rotation_rad), sg = std::sin(earth_rotation_rad);
    return {radius_m * (cg * xr + sg * yr), radius_m * (-sg * xr + cg * yr),
            radius_m * zi};
}

/// Two-body propagation of uniformly phased circular orbits.
inline ConstellationState propagate(const std::vector<OrbitSpec>& orbits,
                                    const PhysicalConstants& pc, double t) {
    if (t < 0) throw std::domain_error("propagate: t must be non-negative");
    ConstellationState st;
    st.epoch_s = t;
    int id = 0;
    for (const auto& o : orbits) {
        double period = orbital_period(o.altitude_m, pc);
        double rate = kTwoPi / period;
        double r = pc.earth_radius_m + o.altitude_m;
        double gst = pc.earth_rotation_rate_rad_s * t;
        for (int k = 0; k < o.satellite_count; ++k) {
            double u = o.phase_offset_rad + kTwoPi * k / o.satellite_count + rate * t;
            st.positions.push_back(
                circular_orbit_position(r, o.inclination_rad, o.raan_rad, u, gst));
            st.satellite_ids.push_back(id++);
        }
    }
    return st;
}

/// Geocentric (longitude, latitude) of the radial projection onto the sphere.
inline std::pair<double, double> sub_satellite_point(const Vec3& position) {
    double n = position.norm();
    if (n <= 0)
        throw std::domain_error("sub_satellite_point: zero position vector");
    double lat = std::asin(std::clamp(position.z / n, -1.0, 1.0));
    double lon = wrap_longitude(std::atan2(position.y, position.x));
    return {lon, lat};
}

inline double inter_satellite_distance(const ConstellationState& st, int sat_a,
                                       int sat_b) {
    if (sat_a < 0 || sat_b < 0 || sat_a >= static_cast<int>(st.size()) ||
        sat_b >= static_cast<int>(st.size()))
        throw std::out_of_range("inter_satellite_distance: unknown satellite id");
    return distance(st.positions[sat_a], st.positions[sat_b]);
}

struct VisibilityOptions {
    double step_s = 1.0;
    double refine_s = 0.01;
    double horizon_s = 3600.0;  // cap on the returned window
};

/// Largest D such that the pair stays within max_range over [t, t+D].
/// Forward sampling at opts.step_s, then bisection on the last step.
inline double visibility_window(
    const std::function<ConstellationState(double)>& state_fn, int sat_a,
    int sat_b, double t, double max_range_m, const VisibilityOptions& opts = {}) {
    auto in_range = [&](double s) {
        return inter_satellite_distance(state_fn(s), sat_a, sat_b) <= max_range_m;
    };
    if (!in_range(t)) return 0.0;
    double lo = 0.0;
    while (lo + opts.step_s <= opts.horizon_s) {
        if (!in_range(t + lo + opts.step_s)) {
            // Boundary in (lo, lo+step]; bisect.
            double hi = lo + opts.step_s;
            while (hi - lo > opts.refine_s) {
                double mid = 0.5 * (lo + hi);
                (in_range(t + mid) ? lo : hi) = mid;
            }
            return lo;
        }
        lo += opts.step_s;
    }
    return opts.horizon_s;
}

}  // namespace leosim

#endif
