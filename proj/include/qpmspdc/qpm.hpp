#pragma once

// Quasi-phase-matching residual for arbitrary propagation directions and
// grating orders, and solvers for poling period, pump angle and signal/idler
// wavelengths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "format.hpp"
#include "interaction.hpp"
#include "roots.hpp"
#include "units.hpp"

namespace qpmspdc {

/// Smallest poling period currently achievable in lithium niobate.
inline constexpr double min_feasible_period_m = 4.0e-6;

struct SolverOptions {
    double theta_step_deg = 0.01;
    double lambda_step_nm = 0.1;
    double residual_scale = 1e-6; // root tolerance as a fraction of k_p
    double theta_xtol_deg = 1e-10;
    double lambda_xtol_nm = 1e-9;
};

struct PhaseMatchSolution {
    double theta_deg = 0.0;
    double period_m = 0.0; // +inf when the required period diverges
    double lambda_s_nm = 0.0;
    double lambda_i_nm = 0.0;
    int order = 0;
    double residual = 0.0; // rad/m
    bool feasible_poling = false;
    bool divergent_period = false;
};

/// Direction-signed mismatch without the grating term,
/// beta_p - s_s beta_s - s_i beta_i, in rad/m.
inline double mismatch_without_grating(const InteractionConfig& cfg, double lambda_s_nm) {
    const double lambda_i_nm = idler_from_energy(cfg.pump.wavelength_nm, lambda_s_nm);
    return pump_longitudinal(cfg) - sign(cfg.dirs.signal) * field_beta(cfg, lambda_s_nm) -
           sign(cfg.dirs.idler) * field_beta(cfg, lambda_i_nm);
}

/// Delta beta' = beta_p - s_s beta_s - s_i beta_i - K_m.
inline double phase_mismatch(const InteractionConfig& cfg, double lambda_s_nm, int m) {
    const double k_m = grating_wavenumber(cfg.poling, m);
    return mismatch_without_grating(cfg, lambda_s_nm) - k_m;
}

inline double residual_tolerance(const InteractionConfig& cfg, const SolverOptions& opts = {}) {
    return opts.residual_scale * pump_wavenumber(cfg);
}

namespace detail {

inline InteractionConfig with_theta(InteractionConfig cfg, double theta_deg) {
    cfg.pump.theta_deg = theta_deg;
    validate(cfg.pump);
    return cfg;
}

inline bool feasible(double period_m) noexcept { return period_m >= min_feasible_period_m; }

} // namespace detail

/// Poling period that phase matches the given pair at angle theta, using the
/// config's pump wavelength, medium, beta mode and directions. A mismatch
/// within the root tolerance of zero yields the divergent-period marker
/// (period = +inf); a mismatch of the wrong sign for `m` throws NoSolutionError.
inline PhaseMatchSolution solve_poling_period(const InteractionConfig& cfg, double theta_deg, double lambda_s_nm,
                                              double lambda_i_nm, int m, const SolverOptions& opts = {}) {
    if (m == 0) throw InputError("solve_poling_period: order m must be nonzero");
    const auto local = detail::with_theta(cfg, theta_deg);
    const double idler = resolve_idler(local.pump.wavelength_nm, lambda_s_nm, lambda_i_nm);
    const double mismatch = mismatch_without_grating(local, lambda_s_nm);

    PhaseMatchSolution sol;
    sol.theta_deg = theta_deg;
    sol.lambda_s_nm = lambda_s_nm;
    sol.lambda_i_nm = idler;
    sol.order = m;
    if (std::abs(mismatch) <= residual_tolerance(local, opts)) {
        sol.period_m = std::numeric_limits<double>::infinity();
        sol.residual = mismatch;
        sol.feasible_poling = true;
        sol.divergent_period = true;
        return sol;
    }
    const double period = two_pi * m / mismatch;
    if (!(period > 0.0))
        throw NoSolutionError("no positive poling period phase matches order " + std::to_string(m) + " at " +
                              format_number(theta_deg) + " deg");
    sol.period_m = period;
    sol.residual = mismatch - grating_wavenumber(period, m);
    sol.feasible_poling = detail::feasible(period);
    return sol;
}

/// All pump angles in [0, 90] deg with Delta beta' = 0 for each order, sorted
/// by angle then order. Empty when nothing phase matches.
inline std::vector<PhaseMatchSolution> solve_pump_angles(const InteractionConfig& cfg, double lambda_s_nm,
                                                         double lambda_i_nm, const std::vector<int>& orders,
                                                         const SolverOptions& opts = {}) {
    validate(cfg.poling);
    if (orders.empty()) throw InputError("solve_pump_angles: no grating orders given");
    const double idler = resolve_idler(cfg.pump.wavelength_nm, lambda_s_nm, lambda_i_nm);

    InteractionConfig local = cfg;
    local.poling.orders = orders;
    // The signal/idler betas do not depend on theta.
    const double beta_fields = sign(cfg.dirs.signal) * field_beta(local, lambda_s_nm) +
                               sign(cfg.dirs.idler) * field_beta(local, idler);
    const double k_p = pump_wavenumber(local);
    RootScanOptions scan{opts.theta_step_deg, opts.residual_scale * k_p, opts.theta_xtol_deg};

    std::vector<PhaseMatchSolution> out;
    for (int m : orders) {
        const double k_m = grating_wavenumber(local.poling.period_m, m);
        auto f = [&](double theta) { return k_p * cos_deg(theta) - beta_fields - k_m; };
        for (double theta : find_roots(f, 0.0, 90.0, scan)) {
            PhaseMatchSolution sol;
            sol.theta_deg = theta;
            sol.period_m = local.poling.period_m;
            sol.lambda_s_nm = lambda_s_nm;
            sol.lambda_i_nm = idler;
            sol.order = m;
            sol.residual = phase_mismatch(detail::with_theta(local, theta), lambda_s_nm, m);
            sol.feasible_poling = detail::feasible(local.poling.period_m);
            out.push_back(sol);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.theta_deg != b.theta_deg ? a.theta_deg < b.theta_deg : a.order < b.order;
    });
    return out;
}

/// All signal wavelengths inside the dispersion window that phase match order
/// m at angle theta. For co-propagating photons each pair appears twice with
/// the labels swapped; it is reported once with lambda_s <= lambda_i.
inline std::vector<PhaseMatchSolution> solve_signal_idler(const InteractionConfig& cfg, double theta_deg, int m,
                                                          const SolverOptions& opts = {}) {
    InteractionConfig local = detail::with_theta(cfg, theta_deg);
    validate(local.poling);
    if (!has_order(local.poling, m)) local.poling.orders.push_back(m);
    const auto window = signal_window(local);
    RootScanOptions scan{opts.lambda_step_nm, residual_tolerance(local, opts), opts.lambda_xtol_nm};

    auto f = [&](double lambda_s) { return phase_mismatch(local, lambda_s, m); };
    std::vector<PhaseMatchSolution> out;
    const bool symmetric = !local.dirs.counter_propagating();
    for (double lambda_s : find_roots(f, window.min_nm, window.max_nm, scan)) {
        const double lambda_i = idler_from_energy(local.pump.wavelength_nm, lambda_s);
        if (symmetric && lambda_s > lambda_i) continue;
        PhaseMatchSolution sol;
        sol.theta_deg = theta_deg;
        sol.period_m = local.poling.period_m;
        sol.lambda_s_nm = lambda_s;
        sol.lambda_i_nm = lambda_i;
        sol.order = m;
        sol.residual = f(lambda_s);
        sol.feasible_poling = detail::feasible(local.poling.period_m);
        out.push_back(sol);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tuning sweeps

enum class SweepAxis { theta, period };
enum class SweepTarget { wavelength_pairs, poling_period, pump_angle };

struct AxisRange {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

/// Inclusive axis values start, start + step, ..., stop.
inline std::vector<double> axis_values(const AxisRange& range) {
    if (!std::isfinite(range.start) || !std::isfinite(range.stop) || !std::isfinite(range.step) ||
        !(range.step > 0.0) || range.stop < range.start)
        throw InputError("sweep range needs finite start <= stop and step > 0");
    const auto n = static_cast<long>(std::floor((range.stop - range.start) / range.step + 1e-9));
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) values.push_back(range.start + static_cast<double>(i) * range.step);
    return values;
}

struct TuningSweepSpec {
    SweepAxis axis = SweepAxis::theta;
    SweepTarget target = SweepTarget::wavelength_pairs;
    AxisRange range;          // degrees for the theta axis, metres for the period axis
    std::vector<int> orders;
    double lambda_s_nm = 1064.0; // used by the poling_period and pump_angle targets
    double lambda_i_nm = 1064.0;
};

struct TuningRow {
    double axis_value = 0.0;
    int order = 0;
    std::optional<PhaseMatchSolution> solution; // empty: no root (or failure)
    std::string error;                          // non-empty: evaluation failed
};

struct TuningCurve {
    SweepAxis axis = SweepAxis::theta;
    std::vector<TuningRow> rows;

    std::size_t failed_rows() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [](const TuningRow& r) { return !r.error.empty(); }));
    }
    std::size_t solution_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [](const TuningRow& r) { return r.solution.has_value(); }));
    }
};

/// Runs the relevant solver at every axis value and order. Rows come out in
/// axis order, then order, then root order; a failure at one point is recorded
/// in that row and the sweep continues.
inline TuningCurve tuning_sweep(const InteractionConfig& cfg, const TuningSweepSpec& spec,
                                const SolverOptions& opts = {}) {
    if (spec.orders.empty()) throw InputError("tuning_sweep: no grating orders given");
    const bool theta_axis = spec.axis == SweepAxis::theta;
    if (theta_axis && spec.target == SweepTarget::pump_angle)
        throw InputError("tuning_sweep: a theta axis cannot solve for the pump angle");
    if (!theta_axis && spec.target == SweepTarget::poling_period)
        throw InputError("tuning_sweep: a period axis cannot solve for the poling period");
    const auto values = axis_values(spec.range);
    if (theta_axis && (values.front() < 0.0 || values.back() > 90.0 + 1e-9))
        throw InputError("tuning_sweep: theta range must lie in [0, 90] degrees");
    if (!theta_axis && values.front() <= 0.0) throw InputError("tuning_sweep: periods must be positive");

    TuningCurve curve;
    curve.axis = spec.axis;
    for (double v : values) {
        InteractionConfig local = cfg;
        if (theta_axis)
            local.pump.theta_deg = std::min(v, 90.0);
        else
            local.poling.period_m = v;
        local.poling.orders = spec.orders;

        auto record = [&](int m, auto&& solve) {
            try {
                auto sols = solve(m);
                if (sols.empty()) curve.rows.push_back({v, m, std::nullopt, {}});
                for (auto& s : sols) curve.rows.push_back({v, m, s, {}});
            } catch (const NoSolutionError&) {
                curve.rows.push_back({v, m, std::nullopt, {}});
            } catch (const Error& e) {
                curve.rows.push_back({v, m, std::nullopt, e.what()});
            }
        };

        for (int m : spec.orders) {
            switch (spec.target) {
            case SweepTarget::wavelength_pairs:
                record(m, [&](int order) { return solve_signal_idler(local, local.pump.theta_deg, order, opts); });
                break;
            case SweepTarget::poling_period:
                record(m, [&](int order) {
                    if (order == 0) throw NoSolutionError("order 0 has no poling period");
                    return std::vector<PhaseMatchSolution>{solve_poling_period(
                        local, local.pump.theta_deg, spec.lambda_s_nm, spec.lambda_i_nm, order, opts)};
                });
                break;
            case SweepTarget::pump_angle:
                record(m, [&](int order) {
                    return solve_pump_angles(local, spec.lambda_s_nm, spec.lambda_i_nm, {order}, opts);
                });
                break;
            }
        }
    }
    return curve;
}

inline constexpr const char* tuning_csv_header =
    "axis_value,order_m,lambda_s_nm,lambda_i_nm,period_um,theta_deg,residual,feasible";

/// Writes the tuning table; the axis value is in degrees (theta axis) or
/// micrometres (period axis). Failed rows carry `error` in the feasible column.
inline void write_tuning_csv(std::ostream& os, const TuningCurve& curve) {
    os << tuning_csv_header << '\n';
    const double axis_scale = curve.axis == SweepAxis::period ? 1.0 / um_to_m : 1.0;
    for (const auto& row : curve.rows) {
        os << format_number(row.axis_value * axis_scale) << ',' << row.order << ',';
        if (row.solution) {
            const auto& s = *row.solution;
            os << format_number(s.lambda_s_nm) << ',' << format_number(s.lambda_i_nm) << ','
               << format_number(s.period_m / um_to_m) << ',' << format_number(s.theta_deg) << ','
               << format_number(s.residual) << ',' << (s.feasible_poling ? "true" : "false") << '\n';
        } else {
            os << "NA,NA,NA,NA,NA," << (row.error.empty() ? "NA" : "error") << '\n';
        }
    }
}

} // namespace qpmspdc
