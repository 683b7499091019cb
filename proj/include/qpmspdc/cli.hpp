#pragma once

// Command-line front end: configuration loading (file, then flags), dispatch
// to the solvers and spectrum routines, CSV emission.
//
// Exit status: 0 success, 1 physics/range/io failure, 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dispersion.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "interaction.hpp"
#include "keyvalue.hpp"
#include "qpm.hpp"
#include "spectrum.hpp"
#include "units.hpp"

namespace qpmspdc::cli {

struct RunConfig {
    std::string sellmeier_path; // empty: built-in congruent LiNbO3 set
    double pump_wavelength_nm = 532.0;
    double theta_deg = 0.0;
    double poling_period_um = 6.8;
    std::vector<int> orders{-1, 1};
    double length_mm = 1.0;
    double grin_alpha_per_m = 4.0e5;
    double duty = 0.5;
    BetaMode beta_mode = BetaMode::bulk;
    DirectionPair directions = DirectionPair::counter();
    BracketMode bracket = BracketMode::squared;
    std::string output_path; // empty: CSV to stdout

    double signal_nm = 1064.0;
    std::optional<double> idler_nm; // derived from energy conservation when unset
    double lambda_nm = 1064.0;      // `index` evaluation point

    std::optional<AxisRange> window_nm; // spectrum/index/specmap wavelength grid
    AxisRange theta_range_deg{65.0, 90.0, 0.1};
    AxisRange period_range_um{1.0, 20.0, 0.1};
    SweepAxis sweep_axis = SweepAxis::theta;
    SweepTarget sweep_target = SweepTarget::wavelength_pairs;

    std::vector<double> signals_nm{880, 890, 900, 910, 920, 930, 940, 950, 960, 970,
                                   980, 990, 1000, 1010, 1020, 1030, 1040, 1050, 1060, 1064};
    double reference_nm = 880.0;
};

// ---------------------------------------------------------------------------
// Value parsing shared by config files and flags

namespace detail {

inline AxisRange parse_range(const std::string& text, const std::string& what) {
    const auto parts = qpmspdc::detail::split(text, ':');
    AxisRange r;
    if (parts.size() != 3 || !qpmspdc::detail::parse_real(parts[0], r.start) ||
        !qpmspdc::detail::parse_real(parts[1], r.stop) || !qpmspdc::detail::parse_real(parts[2], r.step))
        throw UsageError(what + ": expected `start:stop:step`, got `" + text + "`");
    return r;
}

inline std::vector<int> parse_orders(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (auto token : qpmspdc::detail::split(text, ',')) {
        long v = 0;
        if (!qpmspdc::detail::parse_int(token, v)) throw UsageError(what + ": expected integers, got `" + text + "`");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

/// Either a comma list or a `start:stop:step` range.
inline std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    if (text.find(':') != std::string::npos) return axis_values(parse_range(text, what));
    std::vector<double> out;
    for (auto token : qpmspdc::detail::split(text, ',')) {
        double v = 0;
        if (!qpmspdc::detail::parse_real(token, v)) throw UsageError(what + ": expected reals, got `" + text + "`");
        out.push_back(v);
    }
    return out;
}

inline double parse_number(const std::string& text, const std::string& what) {
    double v = 0;
    if (!qpmspdc::detail::parse_real(text, v) || !std::isfinite(v))
        throw UsageError(what + ": expected a finite number, got `" + text + "`");
    return v;
}

inline BetaMode parse_beta_mode(const std::string& text, const std::string& what) {
    if (text == "bulk") return BetaMode::bulk;
    if (text == "guided") return BetaMode::guided;
    throw UsageError(what + ": expected `bulk` or `guided`, got `" + text + "`");
}

inline DirectionPair parse_directions(const std::string& text, const std::string& what) {
    if (text == "co") return DirectionPair::co();
    if (text == "counter") return DirectionPair::counter();
    throw UsageError(what + ": expected `co` or `counter`, got `" + text + "`");
}

inline BracketMode parse_bracket(const std::string& text, const std::string& what) {
    if (text == "literal") return BracketMode::literal;
    if (text == "squared") return BracketMode::squared;
    throw UsageError(what + ": expected `literal` or `squared`, got `" + text + "`");
}

inline SweepAxis parse_axis(const std::string& text, const std::string& what) {
    if (text == "theta") return SweepAxis::theta;
    if (text == "period") return SweepAxis::period;
    throw UsageError(what + ": expected `theta` or `period`, got `" + text + "`");
}

inline SweepTarget parse_target(const std::string& text, const std::string& what) {
    if (text == "pairs") return SweepTarget::wavelength_pairs;
    if (text == "period") return SweepTarget::poling_period;
    if (text == "angles") return SweepTarget::pump_angle;
    throw UsageError(what + ": expected `pairs`, `period` or `angles`, got `" + text + "`");
}

inline std::string range_string(const AxisRange& r) {
    return format_number(r.start) + ":" + format_number(r.stop) + ":" + format_number(r.step);
}

inline std::string list_string(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

inline std::string to_string(SweepTarget t) {
    switch (t) {
    case SweepTarget::wavelength_pairs: return "pairs";
    case SweepTarget::poling_period: return "period";
    case SweepTarget::pump_angle: return "angles";
    }
    return "";
}

} // namespace detail

/// Applies one `key = value` setting. Keys match the RunConfig field names.
inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value,
                          const std::string& where) {
    const std::string what = where + "`" + key + "`";
    using namespace detail;
    if (key == "sellmeier_path") cfg.sellmeier_path = value;
    else if (key == "pump_wavelength_nm") cfg.pump_wavelength_nm = parse_number(value, what);
    else if (key == "theta_deg") cfg.theta_deg = parse_number(value, what);
    else if (key == "poling_period_um") cfg.poling_period_um = parse_number(value, what);
    else if (key == "orders") cfg.orders = parse_orders(value, what);
    else if (key == "length_mm") cfg.length_mm = parse_number(value, what);
    else if (key == "grin_alpha_per_m") cfg.grin_alpha_per_m = parse_number(value, what);
    else if (key == "duty") cfg.duty = parse_number(value, what);
    else if (key == "beta_mode") cfg.beta_mode = parse_beta_mode(value, what);
    else if (key == "directions") cfg.directions = parse_directions(value, what);
    else if (key == "bracket") cfg.bracket = parse_bracket(value, what);
    else if (key == "output_path") cfg.output_path = value;
    else if (key == "signal_nm") cfg.signal_nm = parse_number(value, what);
    else if (key == "idler_nm") cfg.idler_nm = parse_number(value, what);
    else if (key == "lambda_nm") cfg.lambda_nm = parse_number(value, what);
    else if (key == "window_nm") cfg.window_nm = parse_range(value, what);
    else if (key == "theta_range_deg") cfg.theta_range_deg = parse_range(value, what);
    else if (key == "period_range_um") cfg.period_range_um = parse_range(value, what);
    else if (key == "sweep_axis") cfg.sweep_axis = parse_axis(value, what);
    else if (key == "sweep_target") cfg.sweep_target = parse_target(value, what);
    else if (key == "signals_nm") cfg.signals_nm = parse_real_list(value, what);
    else if (key == "reference_nm") cfg.reference_nm = parse_number(value, what);
    else throw UsageError(where + "unknown key `" + key + "`");
}

/// Throws UsageError naming the offending key.
inline void validate(const RunConfig& cfg) {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string("`") + key + "` must be positive");
    };
    positive(cfg.pump_wavelength_nm, "pump_wavelength_nm");
    positive(cfg.poling_period_um, "poling_period_um");
    positive(cfg.length_mm, "length_mm");
    positive(cfg.grin_alpha_per_m, "grin_alpha_per_m");
    positive(cfg.signal_nm, "signal_nm");
    positive(cfg.lambda_nm, "lambda_nm");
    positive(cfg.reference_nm, "reference_nm");
    if (cfg.idler_nm) positive(*cfg.idler_nm, "idler_nm");
    if (!(cfg.theta_deg >= 0.0 && cfg.theta_deg <= 90.0))
        throw UsageError("`theta_deg` must lie in [0, 90], got " + format_number(cfg.theta_deg));
    if (!(cfg.duty > 0.0 && cfg.duty < 1.0)) throw UsageError("`duty` must lie in (0, 1)");
    if (cfg.orders.empty()) throw UsageError("`orders` must not be empty");
    if (!(cfg.signal_nm > cfg.pump_wavelength_nm))
        throw UsageError("`signal_nm` must exceed `pump_wavelength_nm`");
    if (cfg.signals_nm.empty()) throw UsageError("`signals_nm` must not be empty");
    auto range_ok = [](const AxisRange& r, const char* key, double min_start) {
        if (!(r.step > 0.0) || !(r.stop >= r.start) || r.start < min_start)
            throw UsageError(std::string("`") + key + "` needs start <= stop, step > 0 and start >= " +
                             format_number(min_start));
    };
    if (cfg.window_nm) range_ok(*cfg.window_nm, "window_nm", 0.0);
    range_ok(cfg.theta_range_deg, "theta_range_deg", 0.0);
    if (cfg.theta_range_deg.stop > 90.0) throw UsageError("`theta_range_deg` must end at or below 90");
    range_ok(cfg.period_range_um, "period_range_um", 1e-9);
}

inline RunConfig parse_config(std::string_view text, std::string origin = "<string>") {
    RunConfig cfg;
    KeyValueFile file;
    try {
        file = KeyValueFile::parse(text, std::move(origin));
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto& e : file.entries())
        apply_setting(cfg, e.key, e.value, file.origin() + ":" + std::to_string(e.line) + ": key ");
    validate(cfg);
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file `" + path + "`");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

inline Metadata describe(const RunConfig& cfg) {
    using namespace detail;
    return {
        {"sellmeier_path", cfg.sellmeier_path.empty() ? "builtin:ppln_e" : cfg.sellmeier_path},
        {"pump_wavelength_nm", format_number(cfg.pump_wavelength_nm)},
        {"theta_deg", format_number(cfg.theta_deg)},
        {"poling_period_um", format_number(cfg.poling_period_um)},
        {"orders", join_orders(cfg.orders)},
        {"length_mm", format_number(cfg.length_mm)},
        {"grin_alpha_per_m", format_number(cfg.grin_alpha_per_m)},
        {"duty", format_number(cfg.duty)},
        {"beta_mode", std::string(qpmspdc::to_string(cfg.beta_mode))},
        {"directions", std::string(qpmspdc::to_string(cfg.directions))},
        {"bracket", std::string(qpmspdc::to_string(cfg.bracket))},
        {"signal_nm", format_number(cfg.signal_nm)},
        {"idler_nm", cfg.idler_nm ? format_number(*cfg.idler_nm) : "derived"},
        {"lambda_nm", format_number(cfg.lambda_nm)},
        {"window_nm", cfg.window_nm ? range_string(*cfg.window_nm) : "auto"},
        {"theta_range_deg", range_string(cfg.theta_range_deg)},
        {"period_range_um", range_string(cfg.period_range_um)},
        {"sweep_axis", cfg.sweep_axis == SweepAxis::theta ? "theta" : "period"},
        {"sweep_target", detail::to_string(cfg.sweep_target)},
        {"signals_nm", list_string(cfg.signals_nm)},
        {"reference_nm", format_number(cfg.reference_nm)},
    };
}

inline InteractionConfig make_interaction(const RunConfig& cfg) {
    InteractionConfig ic;
    ic.waveguide.core_index =
        cfg.sellmeier_path.empty() ? congruent_lithium_niobate() : load_sellmeier(cfg.sellmeier_path);
    ic.waveguide.alpha_per_m = cfg.grin_alpha_per_m;
    ic.waveguide.length_m = cfg.length_mm * mm_to_m;
    ic.pump = {cfg.pump_wavelength_nm, cfg.theta_deg};
    ic.poling = {cfg.poling_period_um * um_to_m, cfg.duty, cfg.orders};
    ic.dirs = cfg.directions;
    ic.beta_mode = cfg.beta_mode;
    validate(ic);
    return ic;
}

// ---------------------------------------------------------------------------
// Subcommands

namespace detail {

struct Output {
    std::string csv;
    std::string summary;
};

inline std::string solution_list(const std::vector<PhaseMatchSolution>& sols, bool angles) {
    std::string s;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto& x = sols[i];
        s += (i ? ", " : "");
        if (angles) s += format_number(x.theta_deg) + " deg";
        else s += format_number(x.lambda_s_nm) + "/" + format_number(x.lambda_i_nm) + " nm";
        s += " (m=" + std::to_string(x.order) + ")";
    }
    return s;
}

inline Output run_index(const RunConfig& rc, const InteractionConfig& ic, std::ostringstream& csv) {
    csv << "lambda_nm,n_e\n";
    if (rc.window_nm) {
        const auto grid = axis_values(*rc.window_nm);
        for (double l : grid) csv << format_number(l) << ',' << format_number(refractive_index(ic.medium(), l)) << '\n';
        return {csv.str(), "evaluated n_e at " + std::to_string(grid.size()) + " wavelengths"};
    }
    const double n = refractive_index(ic.medium(), rc.lambda_nm);
    csv << format_number(rc.lambda_nm) << ',' << format_number(n) << '\n';
    return {csv.str(), "n_e(" + format_number(rc.lambda_nm) + " nm) = " + format_number(n)};
}

inline double idler_for(const RunConfig& rc) {
    return rc.idler_nm ? resolve_idler(rc.pump_wavelength_nm, rc.signal_nm, *rc.idler_nm)
                       : idler_from_energy(rc.pump_wavelength_nm, rc.signal_nm);
}

inline Output run_tuning(const std::string& which, const RunConfig& rc, const InteractionConfig& ic,
                         std::ostringstream& csv) {
    TuningCurve curve;
    std::string summary;
    if (which == "period") {
        const double idler = idler_for(rc);
        std::vector<PhaseMatchSolution> found;
        for (int m : rc.orders) {
            TuningRow row{rc.theta_deg, m, std::nullopt, {}};
            if (m != 0) {
                try {
                    row.solution = solve_poling_period(ic, rc.theta_deg, rc.signal_nm, idler, m);
                    found.push_back(*row.solution);
                } catch (const NoSolutionError&) {
                }
            }
            curve.rows.push_back(row);
        }
        summary = std::to_string(found.size()) + " period(s):";
        for (const auto& s : found)
            summary += " " + (s.divergent_period ? std::string("diverges") : format_number(s.period_m / um_to_m) + " um") +
                       " (m=" + std::to_string(s.order) + (s.feasible_poling ? ", feasible)" : ", below 4 um)");
    } else if (which == "angles") {
        curve.axis = SweepAxis::period;
        const auto sols = solve_pump_angles(ic, rc.signal_nm, idler_for(rc), rc.orders);
        for (const auto& s : sols) curve.rows.push_back({ic.poling.period_m, s.order, s, {}});
        summary = std::to_string(sols.size()) + " angle root(s): " + solution_list(sols, true);
    } else if (which == "pairs") {
        std::vector<PhaseMatchSolution> all;
        for (int m : rc.orders) {
            const auto sols = solve_signal_idler(ic, rc.theta_deg, m);
            if (sols.empty()) curve.rows.push_back({rc.theta_deg, m, std::nullopt, {}});
            for (const auto& s : sols) {
                curve.rows.push_back({rc.theta_deg, m, s, {}});
                all.push_back(s);
            }
        }
        summary = std::to_string(all.size()) + " pair(s): " + solution_list(all, false);
    } else { // sweep
        TuningSweepSpec spec;
        spec.axis = rc.sweep_axis;
        spec.target = rc.sweep_target;
        spec.orders = rc.orders;
        spec.range = rc.theta_range_deg;
        if (rc.sweep_axis == SweepAxis::period) {
            spec.range = {rc.period_range_um.start * um_to_m, rc.period_range_um.stop * um_to_m,
                          rc.period_range_um.step * um_to_m};
        }
        spec.lambda_s_nm = rc.signal_nm;
        spec.lambda_i_nm = idler_for(rc);
        curve = tuning_sweep(ic, spec);
        summary = std::to_string(curve.solution_count()) + " solution(s) over " + std::to_string(curve.rows.size()) +
                  " row(s), " + std::to_string(curve.failed_rows()) + " failed";
    }
    write_tuning_csv(csv, curve);
    return {csv.str(), summary};
}

inline Output run_spectrum(const RunConfig& rc, const InteractionConfig& ic, std::ostringstream& csv) {
    const SpectrumOptions opts{rc.bracket};
    const auto slice = rc.window_nm
                           ? spectrum_slice(ic, {rc.window_nm->start, rc.window_nm->stop, rc.window_nm->step}, opts)
                           : auto_slice(ic, rc.signal_nm, opts);
    Metadata meta{{"config_fingerprint", fingerprint(ic)}};
    write_slice_csv(csv, slice, meta);
    std::string summary = slice.fwhm_nm ? "FWHM = " + format_number(*slice.fwhm_nm) + " nm at " +
                                              format_number(slice.peak_lambda_nm) + " nm"
                                        : "no in-window peak with a full half-maximum width";
    return {csv.str(), summary};
}

inline Output run_bandwidth(const RunConfig& rc, const InteractionConfig& ic, std::ostringstream& csv) {
    const auto rows = bandwidth_ratio_sweep(ic, rc.signals_nm, rc.reference_nm, {rc.bracket});
    write_bandwidth_csv(csv, rows, {{"config_fingerprint", fingerprint(ic)}});
    std::size_t failed = 0;
    for (const auto& r : rows) failed += !r.co.error.empty() + !r.counter.error.empty();
    const auto& last = rows.back();
    return {csv.str(), std::to_string(rows.size()) + " signal wavelength(s), " + std::to_string(failed) +
                           " failed; at " + format_number(last.lambda_s_nm) + " nm co ratio " +
                           format_number(last.co.ratio) + ", counter ratio " + format_number(last.counter.ratio)};
}

inline Output run_specmap(const RunConfig& rc, const InteractionConfig& ic, std::ostringstream& csv) {
    const AxisRange window = rc.window_nm.value_or(AxisRange{700.0, 1200.0, 0.02});
    const auto map = spectral_map(ic, rc.theta_range_deg, window, rc.orders, {rc.bracket});
    write_map_csv(csv, map, {{"config_fingerprint", fingerprint(ic)}});
    return {csv.str(), "map " + std::to_string(map.theta_deg.size()) + " x " + std::to_string(map.lambda_s_nm.size()) +
                           ", " + std::to_string(map.failed_cells) + " failed cell(s)"};
}

inline Output run_superposition(const RunConfig& rc, const InteractionConfig& ic, std::ostringstream& csv) {
    const auto terms = superposition_weights(ic, rc.theta_deg, {rc.bracket});
    write_superposition_csv(csv, terms, {{"config_fingerprint", fingerprint(ic)}});
    std::string s = std::to_string(terms.size()) + " term(s):";
    for (const auto& t : terms)
        s += " " + format_number(t.weight) + "|" + format_number(t.lambda_s_nm) + "," + format_number(t.lambda_i_nm) + ">";
    return {csv.str(), s};
}

} // namespace detail

/// Entry point. CSV goes to `output_path` (summary to `out`) or, without an
/// output path, to `out` (summary to `err`).
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-phase-matched SPDC design and analysis for PPLN waveguides", "qpm_spdc"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, sellmeier, orders, beta_mode, dirs, bracket, output, window, theta_range, period_range,
        axis, target, signals;
    std::string pump, theta, poling, length, alpha, duty, signal, idler, lambda, reference;

    struct Flag {
        CLI::Option* opt;
        std::function<void(RunConfig&)> apply;
    };
    std::vector<Flag> flags;
    auto flag = [&](const std::string& name, std::string& dest, const std::string& key, const std::string& help) {
        flags.push_back({app.add_option(name, dest, help),
                         [&dest, key](RunConfig& rc) { apply_setting(rc, key, dest, "flag "); }});
    };
    app.add_option("--config", config_path, "key = value configuration file (flags override it)");
    flag("--sellmeier", sellmeier, "sellmeier_path", "Sellmeier data file");
    flag("--pump-nm", pump, "pump_wavelength_nm", "pump wavelength (nm)");
    flag("--theta-deg", theta, "theta_deg", "internal pump incidence angle (deg)");
    flag("--poling-um", poling, "poling_period_um", "poling period (um)");
    flag("--orders", orders, "orders", "grating orders, e.g. --orders=-1,1");
    flag("--length-mm", length, "length_mm", "interaction length (mm)");
    flag("--grin-alpha", alpha, "grin_alpha_per_m", "GRIN gradient constant alpha (1/m)");
    flag("--duty", duty, "duty", "poling duty cycle");
    flag("--beta-mode", beta_mode, "beta_mode", "bulk | guided");
    flag("--dirs", dirs, "directions", "co | counter");
    flag("--bracket", bracket, "bracket", "squared | literal");
    flag("-o,--output", output, "output_path", "CSV output file (default: stdout)");
    flag("--signal-nm", signal, "signal_nm", "signal wavelength (nm)");
    flag("--idler-nm", idler, "idler_nm", "idler wavelength (nm); must conserve energy");
    flag("--lambda-nm", lambda, "lambda_nm", "wavelength for `index` (nm)");
    flag("--window", window, "window_nm", "wavelength grid start:stop:step (nm)");
    flag("--theta-range", theta_range, "theta_range_deg", "angle grid start:stop:step (deg)");
    flag("--period-range", period_range, "period_range_um", "period grid start:stop:step (um)");
    flag("--axis", axis, "sweep_axis", "sweep axis: theta | period");
    flag("--target", target, "sweep_target", "sweep target: pairs | period | angles");
    flag("--signals", signals, "signals_nm", "signal wavelengths, list or start:stop:step (nm)");
    flag("--reference-nm", reference, "reference_nm", "reference signal wavelength (nm)");

    auto* index_cmd = app.add_subcommand("index", "extraordinary refractive index");
    auto* tuning_cmd = app.add_subcommand("tuning", "perfect quasi-phase-matching solutions");
    tuning_cmd->require_subcommand(1);
    auto* period_cmd = tuning_cmd->add_subcommand("period", "poling period at fixed angle and pair");
    auto* angles_cmd = tuning_cmd->add_subcommand("angles", "pump angles at fixed period and pair");
    auto* pairs_cmd = tuning_cmd->add_subcommand("pairs", "signal/idler pairs at fixed angle and period");
    auto* sweep_cmd = tuning_cmd->add_subcommand("sweep", "tuning curve over angle or period");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "down-conversion spectrum slice and FWHM");
    auto* bandwidth_cmd = app.add_subcommand("bandwidth-ratio", "bandwidth ratio vs signal wavelength");
    auto* specmap_cmd = app.add_subcommand("specmap", "spectrum vs pump angle map");
    auto* superposition_cmd = app.add_subcommand("superposition", "discrete-frequency superposition weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    RunConfig rc;
    try {
        if (!config_path.empty()) rc = load_config(config_path);
        for (const auto& f : flags)
            if (f.opt->count() > 0) f.apply(rc);
        validate(rc);
    } catch (const Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto ic = make_interaction(rc);
        std::ostringstream csv;
        csv << "# command = ";
        for (const auto* sub : app.get_subcommands()) {
            csv << sub->get_name();
            for (const auto* subsub : sub->get_subcommands()) csv << ' ' << subsub->get_name();
        }
        csv << '\n';
        write_metadata(csv, describe(rc));
        write_metadata(csv, {{"sellmeier_name", ic.medium().name}, {"sellmeier_source", ic.medium().source}});

        detail::Output result;
        if (index_cmd->parsed()) result = detail::run_index(rc, ic, csv);
        else if (period_cmd->parsed()) result = detail::run_tuning("period", rc, ic, csv);
        else if (angles_cmd->parsed()) result = detail::run_tuning("angles", rc, ic, csv);
        else if (pairs_cmd->parsed()) result = detail::run_tuning("pairs", rc, ic, csv);
        else if (sweep_cmd->parsed()) result = detail::run_tuning("sweep", rc, ic, csv);
        else if (spectrum_cmd->parsed()) result = detail::run_spectrum(rc, ic, csv);
        else if (bandwidth_cmd->parsed()) result = detail::run_bandwidth(rc, ic, csv);
        else if (specmap_cmd->parsed()) result = detail::run_specmap(rc, ic, csv);
        else if (superposition_cmd->parsed()) result = detail::run_superposition(rc, ic, csv);

        if (rc.output_path.empty()) {
            out << result.csv;
            err << result.summary << '\n';
        } else {
            std::ofstream file(rc.output_path, std::ios::binary);
            if (!file) throw IoError("cannot write `" + rc.output_path + "`");
            file << result.csv;
            if (!file) throw IoError("failed writing `" + rc.output_path + "`");
            out << result.summary << '\n';
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qpmspdc::cli
