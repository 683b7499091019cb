#pragma once

// Closed-form down-conversion spectrum of a GRIN-slab waveguide pumped by a
// tilted plane wave, FWHM extraction, bandwidth-ratio sweeps, 2-D spectral
// maps and discrete-superposition weights.
//
// The waveguide prefactor sqrt(pi / (g_s^2 + g_i^2)) exp(-zeta^2 / (4 g_eff^2))
// spans hundreds of orders of magnitude across pump angles, so it is carried
// as a logarithm and only exponentiated relative to a reference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "interaction.hpp"
#include "qpm.hpp"
#include "roots.hpp"
#include "units.hpp"
#include "waveguide.hpp"

namespace qpmspdc {

/// How the two-sinc bracket enters the reported spectrum.
enum class BracketMode {
    literal, // the bracket as written, negative side lobes clamped to 0
    squared, // magnitude squared of the bracket
};

constexpr std::string_view to_string(BracketMode mode) noexcept {
    return mode == BracketMode::literal ? "literal" : "squared";
}

struct SpectrumOptions {
    BracketMode bracket = BracketMode::squared;
};

inline double sinc(double x) noexcept {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

struct SpectrumTerms {
    double log_prefactor = 0.0; // natural log of the waveguide prefactor
    double bracket = 0.0;       // grating bracket, after the bracket mode is applied
    double mismatch = 0.0;      // direction-signed Delta beta without the grating, rad/m
};

/// Sum over registered orders of w_m sinc((dbeta - K_m) L / 2), with
/// w_m = |G_m / G_1|; orders {-1, +1} give the two-term first-order bracket.
inline double grating_bracket(const InteractionConfig& cfg, double mismatch) {
    const double g1 = std::abs(fourier_coefficient(cfg.poling, 1));
    if (!(g1 > 1e-12)) throw InputError("spectrum: duty cycle leaves no first-order grating component");
    const double half_length = 0.5 * cfg.waveguide.length_m;
    double sum = 0.0;
    for (int m : cfg.poling.orders) {
        const double w = std::abs(fourier_coefficient(cfg.poling, m)) / g1;
        if (w == 0.0) continue;
        sum += w * sinc((mismatch - grating_wavenumber(cfg.poling.period_m, m)) * half_length);
    }
    return sum;
}

inline SpectrumTerms spectrum_terms(const InteractionConfig& cfg, double lambda_s_nm,
                                    const SpectrumOptions& opts = {}) {
    if (!(cfg.waveguide.alpha_per_m > 0.0))
        throw InputError("spectrum: the waveguide gradient alpha must be > 0");
    const double lambda_i_nm = idler_from_energy(cfg.pump.wavelength_nm, lambda_s_nm);
    const double omega_s = omega_from_nm(lambda_s_nm);
    const double omega_i = omega_from_nm(lambda_i_nm);
    if (cfg.beta_mode == BetaMode::guided) {
        if (!is_single_mode(cfg.waveguide, omega_s) || !is_single_mode(cfg.waveguide, omega_i))
            throw GuidanceError("spectrum: waveguide is not single-mode at " + format_number(lambda_s_nm) + "/" +
                                format_number(lambda_i_nm) + " nm");
    }
    const double g2 = mode_gamma(cfg.waveguide, omega_s) * mode_gamma(cfg.waveguide, omega_s) +
                      mode_gamma(cfg.waveguide, omega_i) * mode_gamma(cfg.waveguide, omega_i);
    // zeta uses n0 at the pump, since omega_s + omega_i = omega_p.
    const double zeta = pump_wavenumber(cfg) * sin_deg(cfg.pump.theta_deg);
    const double gamma_eff2 = 0.5 * g2;

    SpectrumTerms t;
    t.log_prefactor = 0.5 * std::log(pi / g2) - zeta * zeta / (4.0 * gamma_eff2);
    t.mismatch = mismatch_without_grating(cfg, lambda_s_nm);
    const double b = grating_bracket(cfg, t.mismatch);
    t.bracket = opts.bracket == BracketMode::squared ? b * b : b;
    return t;
}

/// Unnormalized spectral intensity; may underflow to 0 where the prefactor is tiny.
inline double spectrum_value(const InteractionConfig& cfg, double lambda_s_nm, const SpectrumOptions& opts = {}) {
    const auto t = spectrum_terms(cfg, lambda_s_nm, opts);
    return std::exp(t.log_prefactor) * std::max(t.bracket, 0.0);
}

// ---------------------------------------------------------------------------
// Half-maximum widths

struct HalfMaxWidth {
    std::size_t peak_index = 0;
    std::optional<double> width; // unset if a crossing is missing
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = std::numeric_limits<double>::quiet_NaN();
    std::size_t points_inside = 0;
};

/// FWHM around the global maximum by linear interpolation of the half-maximum
/// crossings. Ties for the maximum resolve to the first index.
inline HalfMaxWidth half_max_width(const std::vector<double>& x, const std::vector<double>& y) {
    HalfMaxWidth out;
    if (x.size() != y.size() || x.empty()) return out;
    out.peak_index = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    const double peak = y[out.peak_index];
    if (!(peak > 0.0)) return out;
    const double half = 0.5 * peak;

    std::size_t l = out.peak_index;
    while (l > 0 && y[l] >= half) --l;
    std::size_t r = out.peak_index;
    while (r + 1 < y.size() && y[r] >= half) ++r;
    if (y[l] >= half || y[r] >= half) return out;

    out.left = x[l] + (half - y[l]) * (x[l + 1] - x[l]) / (y[l + 1] - y[l]);
    out.right = x[r - 1] + (half - y[r - 1]) * (x[r] - x[r - 1]) / (y[r] - y[r - 1]);
    out.width = out.right - out.left;
    out.points_inside = r - l - 1;
    return out;
}

struct SpectralWindow {
    double lo_nm = 0.0;
    double hi_nm = 0.0;
    double step_nm = 0.1;
};

struct SpectrumSlice {
    std::vector<double> lambda_s_nm;
    std::vector<double> values; // peak-normalized, in [0, 1]
    double peak_lambda_nm = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> fwhm_nm;
    std::size_t points_in_fwhm = 0;
    double prefactor_variation = 0.0; // max/min - 1 of the waveguide prefactor over the slice
    std::size_t failed_points = 0;
    bool flagged = false; // no in-window peak, or its half-maximum crossings fall outside
    BracketMode bracket = BracketMode::squared;
};

inline SpectrumSlice spectrum_slice(const InteractionConfig& cfg, const SpectralWindow& window,
                                    const SpectrumOptions& opts = {}) {
    SpectrumSlice slice;
    slice.bracket = opts.bracket;
    slice.lambda_s_nm = uniform_grid(window.lo_nm, window.hi_nm, window.step_nm);
    const std::size_t n = slice.lambda_s_nm.size();

    std::vector<double> log_pref(n, -std::numeric_limits<double>::infinity());
    std::vector<double> bracket(n, 0.0);
    double lp_max = -std::numeric_limits<double>::infinity();
    double lp_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        try {
            const auto t = spectrum_terms(cfg, slice.lambda_s_nm[i], opts);
            log_pref[i] = t.log_prefactor;
            bracket[i] = std::max(t.bracket, 0.0);
            lp_max = std::max(lp_max, t.log_prefactor);
            lp_min = std::min(lp_min, t.log_prefactor);
        } catch (const Error&) {
            ++slice.failed_points;
        }
    }

    slice.values.assign(n, 0.0);
    if (slice.failed_points == n) {
        slice.flagged = true;
        return slice;
    }
    slice.prefactor_variation = std::expm1(lp_max - lp_min);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (bracket[i] > 0.0) slice.values[i] = std::exp(log_pref[i] - lp_max) * bracket[i];
        peak = std::max(peak, slice.values[i]);
    }
    if (!(peak > 0.0)) {
        slice.flagged = true;
        return slice;
    }
    for (auto& v : slice.values) v /= peak;

    const auto hm = half_max_width(slice.lambda_s_nm, slice.values);
    slice.peak_lambda_nm = slice.lambda_s_nm[hm.peak_index];
    slice.points_in_fwhm = hm.points_inside;
    // A grating bracket below 1/2 at the maximum means only side lobes are in
    // the window (sinc side lobes stay below 0.22).
    if (bracket[hm.peak_index] < 0.5 || !hm.width) {
        slice.flagged = true;
        return slice;
    }
    slice.fwhm_nm = hm.width;
    return slice;
}

struct AutoSliceOptions {
    double initial_halfwidth_nm = 0.05;
    std::size_t search_points = 2001;
    std::size_t points_per_fwhm = 200;
    double margin_fwhm = 1.0; // final window extends this many FWHM past each crossing
};

/// Slice around `center_nm` whose window is widened until the half-maximum
/// crossings of the peak are enclosed, then re-gridded so the FWHM holds
/// `points_per_fwhm` samples.
inline SpectrumSlice auto_slice(const InteractionConfig& cfg, double center_nm, const SpectrumOptions& opts = {},
                                const AutoSliceOptions& auto_opts = {}) {
    const auto limits = signal_window(cfg);
    double half = auto_opts.initial_halfwidth_nm;
    SpectrumSlice slice;
    while (true) {
        const double lo = std::max(limits.min_nm, center_nm - half);
        const double hi = std::min(limits.max_nm, center_nm + half);
        slice = spectrum_slice(cfg, {lo, hi, (hi - lo) / static_cast<double>(auto_opts.search_points - 1)}, opts);
        const bool covers_all = lo <= limits.min_nm && hi >= limits.max_nm;
        if (slice.fwhm_nm || covers_all) break;
        half *= 4.0;
    }
    if (!slice.fwhm_nm) return slice;

    const auto hm = half_max_width(slice.lambda_s_nm, slice.values);
    const double width = *slice.fwhm_nm;
    const double lo = std::max(limits.min_nm, hm.left - auto_opts.margin_fwhm * width);
    const double hi = std::min(limits.max_nm, hm.right + auto_opts.margin_fwhm * width);
    return spectrum_slice(cfg, {lo, hi, width / static_cast<double>(auto_opts.points_per_fwhm)}, opts);
}

// ---------------------------------------------------------------------------
// Bandwidth ratio sweep

struct BandwidthPoint {
    double solved = std::numeric_limits<double>::quiet_NaN(); // period (m) or angle (deg)
    std::optional<double> fwhm_nm;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

struct BandwidthRow {
    double lambda_s_nm = 0.0;
    double lambda_i_nm = 0.0;
    double normalized = 0.0; // lambda_s / (2 lambda_p)
    BandwidthPoint co;       // period solved at theta = 0
    BandwidthPoint counter;  // angle solved at the template period
};

/// FWHM vs signal wavelength for both direction configurations, divided by the
/// FWHM at `reference_nm`. Co-propagating rows phase match order +1 by solving
/// the period at normal incidence; counter-propagating rows keep the template
/// period and solve the pump angle (smallest root of order +1).
inline std::vector<BandwidthRow> bandwidth_ratio_sweep(const InteractionConfig& cfg,
                                                       const std::vector<double>& signals_nm, double reference_nm,
                                                       const SpectrumOptions& opts = {},
                                                       const SolverOptions& solver = {}) {
    if (std::find(signals_nm.begin(), signals_nm.end(), reference_nm) == signals_nm.end())
        throw InputError("bandwidth_ratio_sweep: reference wavelength " + format_number(reference_nm) +
                         " nm is not in the signal list");

    std::vector<BandwidthRow> rows;
    for (double ls : signals_nm) {
        BandwidthRow row;
        row.lambda_s_nm = ls;
        row.normalized = ls / (2.0 * cfg.pump.wavelength_nm);
        try {
            row.lambda_i_nm = idler_from_energy(cfg.pump.wavelength_nm, ls);
        } catch (const Error& e) {
            row.co.error = row.counter.error = e.what();
            rows.push_back(row);
            continue;
        }

        try {
            InteractionConfig co = cfg;
            co.dirs = DirectionPair::co();
            co.pump.theta_deg = 0.0;
            const auto sol = solve_poling_period(co, 0.0, ls, row.lambda_i_nm, 1, solver);
            if (sol.divergent_period) throw NoSolutionError("co-propagating period diverges");
            co.poling.period_m = sol.period_m;
            row.co.solved = sol.period_m;
            row.co.fwhm_nm = auto_slice(co, ls, opts).fwhm_nm;
            if (!row.co.fwhm_nm) row.co.error = "no half-maximum width";
        } catch (const Error& e) {
            row.co.error = e.what();
        }

        try {
            InteractionConfig counter = cfg;
            counter.dirs = DirectionPair::counter();
            const auto sols = solve_pump_angles(counter, ls, row.lambda_i_nm, {1}, solver);
            if (sols.empty()) throw NoSolutionError("no counter-propagating pump angle");
            counter.pump.theta_deg = sols.front().theta_deg;
            row.counter.solved = sols.front().theta_deg;
            row.counter.fwhm_nm = auto_slice(counter, ls, opts).fwhm_nm;
            if (!row.counter.fwhm_nm) row.counter.error = "no half-maximum width";
        } catch (const Error& e) {
            row.counter.error = e.what();
        }
        rows.push_back(row);
    }

    const auto ref = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.lambda_s_nm == reference_nm; });
    for (auto& row : rows) {
        if (row.co.fwhm_nm && ref->co.fwhm_nm) row.co.ratio = *row.co.fwhm_nm / *ref->co.fwhm_nm;
        if (row.counter.fwhm_nm && ref->counter.fwhm_nm)
            row.counter.ratio = *row.counter.fwhm_nm / *ref->counter.fwhm_nm;
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Spectral maps

struct SpectralMap {
    std::vector<double> theta_deg;
    std::vector<double> lambda_s_nm;
    std::vector<double> values; // row-major [theta][lambda], globally normalized to max 1
    std::size_t failed_cells = 0;

    double at(std::size_t row, std::size_t col) const { return values[row * lambda_s_nm.size() + col]; }
};

inline SpectralMap spectral_map(const InteractionConfig& cfg, const AxisRange& theta_range,
                                const AxisRange& lambda_range, const std::vector<int>& orders,
                                const SpectrumOptions& opts = {}) {
    if (orders.empty()) throw InputError("spectral_map: no grating orders given");
    SpectralMap map;
    map.theta_deg = axis_values(theta_range);
    if (map.theta_deg.front() < 0.0 || map.theta_deg.back() > 90.0 + 1e-9)
        throw InputError("spectral_map: theta range must lie in [0, 90] degrees");
    for (auto& t : map.theta_deg) t = std::min(t, 90.0);
    map.lambda_s_nm = axis_values(lambda_range);

    const std::size_t cols = map.lambda_s_nm.size();
    std::vector<double> log_values(map.theta_deg.size() * cols, -std::numeric_limits<double>::infinity());
    double log_max = -std::numeric_limits<double>::infinity();
    InteractionConfig local = cfg;
    local.poling.orders = orders;
    for (std::size_t r = 0; r < map.theta_deg.size(); ++r) {
        local.pump.theta_deg = map.theta_deg[r];
        for (std::size_t c = 0; c < cols; ++c) {
            try {
                const auto t = spectrum_terms(local, map.lambda_s_nm[c], opts);
                if (t.bracket > 0.0) {
                    const double lv = t.log_prefactor + std::log(t.bracket);
                    log_values[r * cols + c] = lv;
                    log_max = std::max(log_max, lv);
                }
            } catch (const Error&) {
                ++map.failed_cells;
            }
        }
    }
    map.values.assign(log_values.size(), 0.0);
    if (std::isfinite(log_max))
        for (std::size_t i = 0; i < log_values.size(); ++i) map.values[i] = std::exp(log_values[i] - log_max);
    return map;
}

/// Indices of local maxima in `row` at or above `threshold` times the row maximum.
inline std::vector<std::size_t> ridge_maxima(const std::vector<double>& row, double threshold = 0.5) {
    std::vector<std::size_t> out;
    if (row.empty()) return out;
    const double top = *std::max_element(row.begin(), row.end());
    if (!(top > 0.0)) return out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const double v = row[i];
        if (v < threshold * top) continue;
        const bool left_ok = i == 0 || row[i - 1] < v;
        const bool right_ok = i + 1 == row.size() || row[i + 1] <= v;
        if (left_ok && right_ok) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Discrete-frequency superposition

/// Integral of one spectral lobe: trapezoid rule from `peak` outwards to the
/// first local minimum (or the grid edge) on each side.
inline double lobe_integral(const std::vector<double>& x, const std::vector<double>& y, std::size_t peak) {
    std::size_t l = peak;
    while (l > 0 && y[l - 1] <= y[l]) --l;
    std::size_t r = peak;
    while (r + 1 < y.size() && y[r + 1] <= y[r]) ++r;
    double sum = 0.0;
    for (std::size_t i = l; i < r; ++i) sum += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return sum;
}

struct SuperpositionTerm {
    double lambda_s_nm = 0.0;
    double lambda_i_nm = 0.0;
    int order = 0;
    double weight = 0.0;
    std::optional<double> fwhm_nm;
};

/// One entry per phase-matched peak at angle theta (all registered orders).
/// Each weight is the integral of that peak's lobe, with all lobes on a common
/// intensity scale, renormalized so the weights sum to 1.
inline std::vector<SuperpositionTerm> superposition_weights(const InteractionConfig& cfg, double theta_deg,
                                                            const SpectrumOptions& opts = {},
                                                            const SolverOptions& solver = {}) {
    InteractionConfig local = cfg;
    local.pump.theta_deg = theta_deg;
    validate(local);

    std::vector<SuperpositionTerm> terms;
    for (int m : local.poling.orders)
        for (const auto& s : solve_signal_idler(local, theta_deg, m, solver))
            terms.push_back({s.lambda_s_nm, s.lambda_i_nm, m, 0.0, std::nullopt});
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.lambda_s_nm < b.lambda_s_nm; });
    if (terms.empty()) return terms;

    const double log_ref = spectrum_terms(local, terms.front().lambda_s_nm, opts).log_prefactor;
    double total = 0.0;
    for (auto& term : terms) {
        const auto slice = auto_slice(local, term.lambda_s_nm, opts);
        term.fwhm_nm = slice.fwhm_nm;
        const double width = slice.fwhm_nm.value_or(1.0);
        const auto limits = signal_window(local);
        const double lo = std::max(limits.min_nm, term.lambda_s_nm - 4.0 * width);
        const double hi = std::min(limits.max_nm, term.lambda_s_nm + 4.0 * width);
        const auto grid = uniform_grid(lo, hi, width / 200.0);
        std::vector<double> y(grid.size(), 0.0);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto t = spectrum_terms(local, grid[i], opts);
            y[i] = std::exp(t.log_prefactor - log_ref) * std::max(t.bracket, 0.0);
        }
        // Start from the sample nearest the root, then climb to the local peak.
        auto peak = static_cast<std::size_t>(
            std::min_element(grid.begin(), grid.end(),
                             [&](double a, double b) {
                                 return std::abs(a - term.lambda_s_nm) < std::abs(b - term.lambda_s_nm);
                             }) -
            grid.begin());
        while (peak + 1 < y.size() && y[peak + 1] > y[peak]) ++peak;
        while (peak > 0 && y[peak - 1] > y[peak]) --peak;
        term.weight = lobe_integral(grid, y, peak);
        total += term.weight;
    }
    if (total > 0.0)
        for (auto& term : terms) term.weight /= total;
    return terms;
}

// ---------------------------------------------------------------------------
// Provenance and CSV output

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline std::string join_orders(const std::vector<int>& orders) {
    std::string s;
    for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "," : "") + std::to_string(orders[i]);
    return s;
}

/// Key/value description of every parameter that affects a computation.
inline Metadata describe(const InteractionConfig& cfg) {
    std::string coeffs;
    for (std::size_t i = 0; i < cfg.medium().coefficients.size(); ++i)
        coeffs += (i ? "," : "") + format_number(cfg.medium().coefficients[i]);
    return {
        {"sellmeier_name", cfg.medium().name},
        {"sellmeier_form", std::string(form_id(cfg.medium().form))},
        {"sellmeier_coefficients", coeffs},
        {"pump_wavelength_nm", format_number(cfg.pump.wavelength_nm)},
        {"theta_deg", format_number(cfg.pump.theta_deg)},
        {"poling_period_um", format_number(cfg.poling.period_m / um_to_m)},
        {"duty", format_number(cfg.poling.duty)},
        {"orders", join_orders(cfg.poling.orders)},
        {"length_mm", format_number(cfg.waveguide.length_m / mm_to_m)},
        {"grin_alpha_per_m", format_number(cfg.waveguide.alpha_per_m)},
        {"directions", std::string(to_string(cfg.dirs))},
        {"beta_mode", std::string(to_string(cfg.beta_mode))},
    };
}

/// FNV-1a hash of the configuration description, as 16 hex digits.
inline std::string fingerprint(const InteractionConfig& cfg) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& [k, v] : describe(cfg)) {
        for (char c : k + "=" + v + ";") {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void write_metadata(std::ostream& os, const Metadata& meta) {
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << '\n';
}

inline void write_slice_csv(std::ostream& os, const SpectrumSlice& slice, const Metadata& meta) {
    write_metadata(os, meta);
    os << "# bracket_mode = " << to_string(slice.bracket) << '\n'
       << "# fwhm_nm = " << (slice.fwhm_nm ? format_number(*slice.fwhm_nm) : "NA") << '\n'
       << "# peak_lambda_nm = " << format_number(slice.peak_lambda_nm) << '\n'
       << "# prefactor_variation = " << format_number(slice.prefactor_variation) << '\n'
       << "# failed_points = " << slice.failed_points << '\n'
       << "lambda_s_nm,intensity_norm\n";
    for (std::size_t i = 0; i < slice.values.size(); ++i)
        os << format_number(slice.lambda_s_nm[i]) << ',' << format_number(slice.values[i]) << '\n';
}

/// First row: lambda grid (leading cell `theta_deg\lambda_s_nm`); first column: theta grid.
inline void write_map_csv(std::ostream& os, const SpectralMap& map, const Metadata& meta) {
    write_metadata(os, meta);
    os << "# failed_cells = " << map.failed_cells << '\n';
    os << "theta_deg\\lambda_s_nm";
    for (double l : map.lambda_s_nm) os << ',' << format_number(l);
    os << '\n';
    for (std::size_t r = 0; r < map.theta_deg.size(); ++r) {
        os << format_number(map.theta_deg[r]);
        for (std::size_t c = 0; c < map.lambda_s_nm.size(); ++c) os << ',' << format_number(map.at(r, c));
        os << '\n';
    }
}

inline void write_bandwidth_csv(std::ostream& os, const std::vector<BandwidthRow>& rows, const Metadata& meta) {
    write_metadata(os, meta);
    os << "lambda_s_nm,lambda_i_nm,normalized_signal,co_period_um,co_fwhm_nm,co_ratio,"
          "counter_theta_deg,counter_fwhm_nm,counter_ratio\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("NA"); };
    for (const auto& r : rows) {
        os << format_number(r.lambda_s_nm) << ',' << format_number(r.lambda_i_nm) << ','
           << format_number(r.normalized) << ',' << format_number(r.co.solved / um_to_m) << ','
           << opt(r.co.fwhm_nm) << ',' << format_number(r.co.ratio) << ',' << format_number(r.counter.solved)
           << ',' << opt(r.counter.fwhm_nm) << ',' << format_number(r.counter.ratio) << '\n';
    }
}

inline void write_superposition_csv(std::ostream& os, const std::vector<SuperpositionTerm>& terms,
                                    const Metadata& meta) {
    write_metadata(os, meta);
    os << "lambda_s_nm,lambda_i_nm,order_m,weight,fwhm_nm\n";
    for (const auto& t : terms)
        os << format_number(t.lambda_s_nm) << ',' << format_number(t.lambda_i_nm) << ',' << t.order << ','
           << format_number(t.weight) << ',' << (t.fwhm_nm ? format_number(*t.fwhm_nm) : "NA") << '\n';
}

} // namespace qpmspdc
