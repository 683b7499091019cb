#pragma once

// Fundamental TE mode of a parabolic graded-index slab,
// n^2(x) = n0^2 (1 - alpha^2 x^2), with n0 taken from the Sellmeier model at
// each field's own wavelength.

#include <cmath>
#include <string>

#include "dispersion.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "units.hpp"

namespace qpmspdc {

struct WaveguideSpec {
    double alpha_per_m = 4.0e5; // gradient constant alpha
    double length_m = 1.0e-3;   // interaction length L
    SellmeierModel core_index;  // supplies n0(lambda)
};

inline void validate(const WaveguideSpec& wg) {
    if (!std::isfinite(wg.alpha_per_m) || wg.alpha_per_m < 0.0)
        throw InputError("waveguide: alpha must be finite and >= 0");
    if (!std::isfinite(wg.length_m) || wg.length_m <= 0.0)
        throw InputError("waveguide: length must be finite and > 0");
}

struct GuidedMode {
    double gamma = 0.0; // transverse decay parameter, 1/m
    double beta = 0.0;  // propagation constant, rad/m
    double omega = 0.0; // rad/s
    bool single_mode = false;
};

/// Bulk wavenumber n0 omega / c.
inline double bulk_wavenumber(const WaveguideSpec& wg, double omega) {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InputError("waveguide: omega must be finite and > 0");
    return refractive_index(wg.core_index, nm_from_omega(omega)) * omega / speed_of_light;
}

inline double mode_gamma(const WaveguideSpec& wg, double omega) {
    return std::sqrt(bulk_wavenumber(wg, omega) * wg.alpha_per_m);
}

namespace detail {

// k sqrt(1 - factor * alpha / k); the bracket must stay positive.
inline double guided_constant(const WaveguideSpec& wg, double omega, double factor, const char* what) {
    const double k = bulk_wavenumber(wg, omega);
    const double bracket = 1.0 - factor * wg.alpha_per_m / k;
    if (!(bracket > 0.0))
        throw GuidanceError(std::string(what) + ": mode not supported at this frequency (" +
                            format_number(nm_from_omega(omega)) + " nm, alpha = " + format_number(wg.alpha_per_m) +
                            " 1/m)");
    return k * std::sqrt(bracket);
}

} // namespace detail

inline double propagation_constant(const WaveguideSpec& wg, double omega) {
    return detail::guided_constant(wg, omega, 1.0, "propagation_constant");
}

/// Single-mode cutoff constant; the same omega is used inside and outside the bracket.
inline double cutoff_constant(const WaveguideSpec& wg, double omega) {
    return detail::guided_constant(wg, omega, 3.0, "cutoff_constant");
}

inline bool is_single_mode(const WaveguideSpec& wg, double omega) {
    return propagation_constant(wg, omega) > cutoff_constant(wg, omega);
}

inline GuidedMode guided_mode(const WaveguideSpec& wg, double omega) {
    const double beta = propagation_constant(wg, omega);
    return {mode_gamma(wg, omega), beta, omega, beta > cutoff_constant(wg, omega)};
}

} // namespace qpmspdc
