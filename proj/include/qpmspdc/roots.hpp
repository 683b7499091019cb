#pragma once

// Bracket-and-bisect root finding on a uniform grid.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace qpmspdc {

struct RootScanOptions {
    double step = 0.01;  // bracketing grid spacing
    double ftol = 0.0;   // |f| at or below this counts as zero
    double xtol = 1e-10; // bisection stops once the bracket is this narrow
    int max_iterations = 200;
};

/// Uniform grid over [lo, hi] with spacing no larger than `step`, both ends included.
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InputError("grid step must be finite and > 0");
    if (!(hi >= lo)) throw InputError("grid upper bound must not be below lower bound");
    const auto intervals = static_cast<std::size_t>(std::ceil((hi - lo) / step - 1e-9));
    std::vector<double> grid;
    grid.reserve(intervals + 1);
    if (intervals == 0) {
        grid.push_back(lo);
        return grid;
    }
    const double h = (hi - lo) / static_cast<double>(intervals);
    for (std::size_t i = 0; i < intervals; ++i) grid.push_back(lo + static_cast<double>(i) * h);
    grid.push_back(hi);
    return grid;
}

/// Bisection on [a, b] with f(a), f(b) of opposite sign. Returns nullopt when
/// the sign change turns out to be a discontinuity (|f| never drops below ftol).
template <class F>
std::optional<double> bisect(F&& f, double a, double b, double fa, double fb, const RootScanOptions& opts) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < opts.max_iterations && (b - a) > opts.xtol; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    const double x = std::abs(fa) <= std::abs(fb) ? a : b;
    const double fx = std::abs(fa) <= std::abs(fb) ? fa : fb;
    if (std::abs(fx) > opts.ftol) return std::nullopt;
    return x;
}

/// All roots of f on [lo, hi]: sign changes between consecutive grid points are
/// refined by bisection; a run of grid points with |f| <= ftol counts as one root.
template <class F>
std::vector<double> find_roots(F&& f, double lo, double hi, const RootScanOptions& opts) {
    std::vector<double> roots;
    const auto grid = uniform_grid(lo, hi, opts.step);

    bool have_prev = false; // previous grid point was evaluated and nonzero
    double prev_x = 0.0, prev_f = 0.0;
    bool in_zero_run = false;
    for (double x : grid) {
        const double fx = f(x);
        if (std::abs(fx) <= opts.ftol) {
            if (!in_zero_run) roots.push_back(x);
            in_zero_run = true;
            continue;
        }
        if (have_prev && !in_zero_run && ((fx < 0.0) != (prev_f < 0.0))) {
            if (auto r = bisect(f, prev_x, x, prev_f, fx, opts)) roots.push_back(*r);
        }
        in_zero_run = false;
        have_prev = true;
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

} // namespace qpmspdc
