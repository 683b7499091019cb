#pragma once

#include <cmath>
#include <numbers>

namespace qpmspdc {

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double nm_to_m = 1e-9;
inline constexpr double um_to_m = 1e-6;
inline constexpr double mm_to_m = 1e-3;

constexpr double deg_to_rad(double deg) noexcept { return deg * (pi / 180.0); }
constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / pi); }

/// Angular frequency (rad/s) of light with vacuum wavelength `lambda_nm`.
inline double omega_from_nm(double lambda_nm) noexcept {
    return two_pi * speed_of_light / (lambda_nm * nm_to_m);
}

inline double nm_from_omega(double omega) noexcept {
    return two_pi * speed_of_light / omega / nm_to_m;
}

// cos/sin in degrees, exact at the quadrant points so that a pump at 90 deg
// contributes exactly zero longitudinal wavevector.
inline double cos_deg(double deg) noexcept {
    if (deg == 90.0) return 0.0;
    if (deg == 0.0) return 1.0;
    return std::cos(deg_to_rad(deg));
}

inline double sin_deg(double deg) noexcept {
    if (deg == 90.0) return 1.0;
    if (deg == 0.0) return 0.0;
    return std::sin(deg_to_rad(deg));
}

} // namespace qpmspdc
