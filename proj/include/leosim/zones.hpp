#ifndef LEOSIM_ZONES_HPP
#define LEOSIM_ZONES_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "leosim/constants.hpp"
#include "leosim/orbit.hpp"

namespace leosim {

/// Static lon/lat zone grid. Zones tile [-pi, pi) x [-pi/2, pi/2],
/// indexed row-major from (-pi, -pi/2); intervals are half-open so
/// boundary points resolve deterministically to the lower zone.
struct ZoneGrid {
    int lon_divisions = 0;
    int lat_divisions = 0;

    int zone_count() const { return lon_divisions * lat_divisions; }

    double lon_width() const { return kTwoPi / lon_divisions; }
    double lat_width() const { return kPi / lat_divisions; }

    int zone_index(double lon_rad, double lat_rad) const {
        lon_rad = wrap_longitude(lon_rad);
        int col = static_cast<int>(std::floor((lon_rad + kPi) / lon_width()));
        int row = static_cast<int>(std::floor((lat_rad + kPi / 2) / lat_width()));
        col = std::clamp(col, 0, lon_divisions - 1);
        row = std::clamp(row, 0, lat_divisions - 1);  // lat = +pi/2 -> top row
        return row * lon_divisions + col;
    }

    int row_of(int vn) const { return vn / lon_divisions; }
    int col_of(int vn) const { return vn % lon_divisions; }

    std::pair<double, double> zone_min(int vn) const {
        return {-kPi + col_of(vn) * lon_width(), -kPi / 2 + row_of(vn) * lat_width()};
    }

    /// East, west and (when not at a polar row) north/south neighbors.
    /// East/west wrap in longitude.
    std::vector<int> neighbors(int vn) const {
        int r = row_of(vn), c = col_of(vn);
        std::vector<int> out;
        if (lon_divisions > 1) {
            out.push_back(r * lon_divisions + (c + 1) % lon_divisions);
            out.push_back(r * lon_divisions + (c + lon_divisions - 1) % lon_divisions);
        }
        if (r + 1 < lat_divisions) out.push_back((r + 1) * lon_divisions + c);
        if (r > 0) out.push_back((r - 1) * lon_divisions + c);
        return out;
    }

    /// Minimal 4-neighbor hop count between two zones (lon wraps).
    int hop_distance(int a, int b) const {
        int dc = std::abs(col_of(a) - col_of(b));
        dc = std::min(dc, lon_divisions - dc);
        return dc + std::abs(row_of(a) - row_of(b));
    }
};

inline ZoneGrid build_zone_grid(int lon_divisions, int lat_divisions) {
    if (lon_divisions < 1 || lat_divisions < 1)
        throw std::domain_error("build_zone_grid: divisions must be >= 1");
    return ZoneGrid{lon_divisions, lat_divisions};
}

/// Satellite <-> VN association at one instant. Every satellite maps to
/// exactly one VN; a VN may hold 0, 1 or many satellites.
struct AssociationMap {
    std::vector<std::vector<int>> vn_to_sats;
    std::vector<int> sat_to_vn;

    bool occupied(int vn) const { return !vn_to_sats[vn].empty(); }
};

inline AssociationMap associate(const ConstellationState& state,
                                const ZoneGrid& grid) {
    AssociationMap m;
    m.vn_to_sats.resize(grid.zone_count());
    m.sat_to_vn.resize(state.size());
    for (std::size_t s = 0; s < state.size(); ++s) {
        auto [lon, lat] = sub_satellite_point(state.positions[s]);
        int vn = grid.zone_index(lon, lat);
        m.vn_to_sats[vn].push_back(static_cast<int>(s));
        m.sat_to_vn[s] = vn;
    }
    return m;
}

}  // namespace leosim

#endif
