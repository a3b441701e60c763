#ifndef LEOSIM_CONSTANTS_HPP
#define LEOSIM_CONSTANTS_HPP

#include <cmath>
#include <limits>

namespace leosim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Earth and signal constants. Defaults are the values used throughout
/// the simulator; all strictly positive.
struct PhysicalConstants {
    double earth_radius_m = 6'371'393.0;
    double earth_mass_kg = 5.965e24;
    double gravitational_constant = 6.67428e-11;
    double earth_rotation_rate_rad_s = 7.29211510e-5;
    double light_speed_m_s = 299'792'458.0;

    double mu() const { return gravitational_constant * earth_mass_kg; }
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle into [-pi, pi).
inline double wrap_longitude(double lon) {
    lon = std::fmod(lon + kPi, kTwoPi);
    if (lon < 0) lon += kTwoPi;
    return lon - kPi;
}

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

}  // namespace leosim

#endif
