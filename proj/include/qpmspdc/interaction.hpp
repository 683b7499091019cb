#pragma once

// Geometry of one down-conversion interaction: tilted plane-wave pump, poled
// grating, graded-index waveguide and the longitudinal directions of the
// signal and idler photons.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dispersion.hpp"
#include "errors.hpp"
#include "units.hpp"
#include "waveguide.hpp"

namespace qpmspdc {

enum class Direction : int { forward = 1, backward = -1 };

constexpr int sign(Direction d) noexcept { return static_cast<int>(d); }

struct DirectionPair {
    Direction signal = Direction::forward;
    Direction idler = Direction::backward;

    static constexpr DirectionPair co() noexcept { return {Direction::forward, Direction::forward}; }
    static constexpr DirectionPair counter() noexcept { return {Direction::forward, Direction::backward}; }

    constexpr bool counter_propagating() const noexcept { return sign(signal) * sign(idler) == -1; }
};

constexpr std::string_view to_string(DirectionPair dirs) noexcept {
    return dirs.counter_propagating() ? "counter" : "co";
}

/// Source of the signal/idler propagation constants.
enum class BetaMode {
    bulk,   // n(lambda) omega / c
    guided, // fundamental GRIN-slab mode
};

constexpr std::string_view to_string(BetaMode mode) noexcept {
    return mode == BetaMode::bulk ? "bulk" : "guided";
}

struct PumpGeometry {
    double wavelength_nm = 532.0;
    double theta_deg = 0.0; // internal incidence angle from the waveguide axis
};

struct PolingSpec {
    double period_m = 6.8e-6;
    double duty = 0.5;
    std::vector<int> orders{-1, 1};
};

struct InteractionConfig {
    PumpGeometry pump;
    PolingSpec poling;
    WaveguideSpec waveguide{4.0e5, 1.0e-3, congruent_lithium_niobate()};
    DirectionPair dirs = DirectionPair::counter();
    BetaMode beta_mode = BetaMode::bulk;

    const SellmeierModel& medium() const noexcept { return waveguide.core_index; }
};

inline void validate(const PumpGeometry& pump) {
    if (!std::isfinite(pump.wavelength_nm) || pump.wavelength_nm <= 0.0)
        throw InputError("pump wavelength must be finite and > 0");
    if (!std::isfinite(pump.theta_deg) || pump.theta_deg < 0.0 || pump.theta_deg > 90.0)
        throw InputError("pump angle must lie in [0, 90] degrees");
}

inline void validate(const PolingSpec& poling) {
    if (!std::isfinite(poling.period_m) || poling.period_m <= 0.0)
        throw InputError("poling period must be finite and > 0");
    if (!std::isfinite(poling.duty) || poling.duty < 0.0 || poling.duty > 1.0)
        throw InputError("poling duty cycle must lie in [0, 1]");
    if (poling.orders.empty()) throw InputError("poling spec needs at least one grating order");
}

inline void validate(const InteractionConfig& cfg) {
    validate(cfg.pump);
    validate(cfg.poling);
    validate(cfg.waveguide);
}

/// Fourier coefficient G_m of a centred square-wave sign modulation with the
/// given duty cycle: (2 / (pi m)) sin(pi m duty), and 2 duty - 1 for m = 0.
inline double fourier_coefficient(const PolingSpec& poling, int m) noexcept {
    if (m == 0) return 2.0 * poling.duty - 1.0;
    // Even orders of the symmetric square wave vanish exactly.
    if (poling.duty == 0.5 && m % 2 == 0) return 0.0;
    return 2.0 / (pi * m) * std::sin(pi * m * poling.duty);
}

inline bool has_order(const PolingSpec& poling, int m) noexcept {
    for (int o : poling.orders)
        if (o == m) return true;
    return false;
}

/// K_m = 2 pi m / Lambda for a grating of the given period.
inline double grating_wavenumber(double period_m, int m) noexcept {
    return two_pi * static_cast<double>(m) / period_m;
}

inline double grating_wavenumber(const PolingSpec& poling, int m) {
    if (!has_order(poling, m))
        throw OrderError("grating order " + std::to_string(m) + " is not registered with the poling spec");
    return grating_wavenumber(poling.period_m, m);
}

/// k_p = n(lambda_p) 2 pi / lambda_p in rad/m.
inline double pump_wavenumber(const InteractionConfig& cfg) {
    return refractive_index(cfg.medium(), cfg.pump.wavelength_nm) * two_pi / (cfg.pump.wavelength_nm * nm_to_m);
}

/// beta_p = k_p cos(theta).
inline double pump_longitudinal(const InteractionConfig& cfg) {
    return pump_wavenumber(cfg) * cos_deg(cfg.pump.theta_deg);
}

/// Magnitude of the guided-field propagation constant at a vacuum wavelength.
inline double field_beta(const InteractionConfig& cfg, double lambda_nm) {
    const double omega = omega_from_nm(lambda_nm);
    if (cfg.beta_mode == BetaMode::guided) return propagation_constant(cfg.waveguide, omega);
    return refractive_index(cfg.medium(), lambda_nm) * omega / speed_of_light;
}

/// lambda_i = 1 / (1/lambda_p - 1/lambda_s).
inline double idler_from_energy(double lambda_p_nm, double lambda_s_nm) {
    if (!std::isfinite(lambda_p_nm) || !std::isfinite(lambda_s_nm) || lambda_p_nm <= 0.0)
        throw InputError("idler_from_energy: wavelengths must be finite and positive");
    if (!(lambda_s_nm > lambda_p_nm))
        throw NonphysicalPairError("signal wavelength " + format_number(lambda_s_nm) +
                                   " nm must exceed the pump wavelength " + format_number(lambda_p_nm) + " nm");
    return 1.0 / (1.0 / lambda_p_nm - 1.0 / lambda_s_nm);
}

/// Checks that (lambda_s, lambda_i) conserves energy with the pump to 0.1% and
/// returns the exact idler wavelength implied by the signal.
inline double resolve_idler(double lambda_p_nm, double lambda_s_nm, double lambda_i_nm) {
    const double exact = idler_from_energy(lambda_p_nm, lambda_s_nm);
    if (!std::isfinite(lambda_i_nm) || lambda_i_nm <= 0.0)
        throw InputError("idler wavelength must be finite and positive");
    const double defect = std::abs(1.0 / lambda_s_nm + 1.0 / lambda_i_nm - 1.0 / lambda_p_nm) * lambda_p_nm;
    if (defect > 1e-3)
        throw NonphysicalPairError("signal " + format_number(lambda_s_nm) + " nm and idler " +
                                   format_number(lambda_i_nm) + " nm do not conserve energy with a " +
                                   format_number(lambda_p_nm) + " nm pump (idler should be " +
                                   format_number(exact) + " nm)");
    return exact;
}

/// Signal wavelengths for which both photons fall inside the medium's dispersion window.
inline WavelengthRange signal_window(const InteractionConfig& cfg) {
    const auto& vr = cfg.medium().valid_range;
    const double inv_p = 1.0 / cfg.pump.wavelength_nm;
    double lo = std::max(vr.min_nm, 1.0 / (inv_p - 1.0 / vr.max_nm));
    double hi = vr.max_nm;
    if (inv_p - 1.0 / vr.min_nm > 0.0) hi = std::min(hi, 1.0 / (inv_p - 1.0 / vr.min_nm));
    // Keep the derived idler strictly inside the window despite rounding.
    lo *= 1.0 + 1e-12;
    hi *= 1.0 - 1e-12;
    if (!(hi > lo)) throw RangeError("no signal wavelength keeps both photons inside the dispersion window");
    return {lo, hi};
}

} // namespace qpmspdc
