#pragma once

// The curve of real values gamma_f: for each radius r the unique point
// zeta_f(r) = r e^{i theta(r)} in the closed right half-plane where f is
// real (or the axis extension +-ir), the value lambda_f(r) = f(zeta_f(r)),
// their r-derivatives, and the balanced / nearly-balanced classification.

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include <rogers/rogers_core.hpp>

namespace rogers {

struct CurveSample {
    double r = 0.0;
    complex zeta{0.0};
    double lam = 0.0;
    complex zeta_prime{0.0};
    double lam_prime = 0.0;
    double arg_zeta = 0.0;
    bool on_axis = false;
};

struct CurveGrid {
    std::vector<CurveSample> samples;
    double r_min = 0.0, r_max = 0.0;
    double balanced_sup_arg = 0.0;
    std::vector<std::pair<double, double>> gamma_interval;  // runs of |gamma_f|
    double margin = pi / 36.0;
};

enum class Balance { Balanced, NearlyBalanced, Neither, Inconclusive };

namespace detail {

// Im f(r e^{i theta}) changes sign at most once on (-pi/2, pi/2) and is
// increasing across the zero; constant sign means the curve runs along the
// imaginary axis at this radius (+ir when Im f < 0 throughout).
inline CurveSample zeta_bisect(const RogersFunction& f, double r) {
    const double delta = 1e-9;
    const double lo0 = -pi / 2.0 + delta, hi0 = pi / 2.0 - delta;
    auto im_f = [&](double th) {
        return f.evaluator(std::polar(r, th)).imag();
    };
    const double flo = im_f(lo0), fhi = im_f(hi0);
    CurveSample s;
    s.r = r;
    if (flo == 0.0 && fhi == 0.0) {
        // numerically even function (e.g. a bounded symmetric f far out,
        // where the xi^{-2} correction underflows): the curve is the real
        // axis itself
        s.zeta = complex(r, 0.0);
    } else if (flo >= 0.0 && fhi >= 0.0) {
        s.on_axis = true;
        s.zeta = complex(0.0, -r);
    } else if (flo <= 0.0 && fhi <= 0.0) {
        s.on_axis = true;
        s.zeta = complex(0.0, r);
    } else {
        double lo = lo0, hi = hi0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (im_f(mid) < 0.0 ? lo : hi) = mid;
        }
        const double th = 0.5 * (lo + hi);
        s.zeta = std::polar(r, th);
    }
    s.arg_zeta = std::atan2(s.zeta.imag(), s.zeta.real());
    s.lam = f.evaluator(s.zeta).real();
    return s;
}

}  // namespace detail

inline CurveSample zeta(const RogersFunction& f, double r, double /*tol*/ = 1e-12) {
    if (!(r > 0.0)) throw OutOfRangeError("zeta: r must be positive");
    const auto& cf = f.closed_form;
    if (cf && cf->zeta && cf->lambda) {
        CurveSample s;
        s.r = r;
        s.zeta = cf->zeta(r);
        s.on_axis = std::abs(s.zeta.real()) <= 1e-14 * r;
        s.arg_zeta = std::atan2(s.zeta.imag(), s.zeta.real());
        s.lam = cf->lambda(r);
        const double h = 1e-5 * r;
        s.zeta_prime = cf->zeta_prime
                           ? cf->zeta_prime(r)
                           : (cf->zeta(r + h) - cf->zeta(r - h)) / (2.0 * h);
        s.lam_prime = cf->lambda_prime
                          ? cf->lambda_prime(r)
                          : (cf->lambda(r + h) - cf->lambda(r - h)) / (2.0 * h);
        return s;
    }
    CurveSample s = detail::zeta_bisect(f, r);
    const double h = 1e-5 * r;
    const CurveSample sp = detail::zeta_bisect(f, r + h);
    const CurveSample sm = detail::zeta_bisect(f, r - h);
    s.zeta_prime = (sp.zeta - sm.zeta) / (2.0 * h);
    s.lam_prime = (sp.lam - sm.lam) / (2.0 * h);
    return s;
}

inline CurveGrid curve_grid(const RogersFunction& f, double r_min, double r_max,
                            int n, double tol = 1e-12) {
    if (!(0.0 < r_min && r_min < r_max) || n < 16)
        throw OutOfRangeError("curve_grid: need 0 < r_min < r_max and n >= 16");
    CurveGrid grid;
    grid.r_min = r_min;
    grid.r_max = r_max;
    for (int i = 0; i < n; ++i) {
        const double r = r_min * std::pow(r_max / r_min, double(i) / (n - 1));
        grid.samples.push_back(zeta(f, r, tol));
    }
    bool in_run = false;
    double run_start = 0.0;
    for (const auto& s : grid.samples) {
        if (!s.on_axis) {
            grid.balanced_sup_arg = std::max(grid.balanced_sup_arg, std::abs(s.arg_zeta));
            if (!in_run) {
                in_run = true;
                run_start = s.r;
            }
        } else if (in_run) {
            in_run = false;
            grid.gamma_interval.emplace_back(run_start, s.r);
        }
    }
    if (in_run) grid.gamma_interval.emplace_back(run_start, r_max);
    return grid;
}

namespace detail {

// Locate the radius where the curve leaves / meets the imaginary axis, by
// bisection on the on_axis flag between two grid radii.
inline double refine_axis_endpoint(const RogersFunction& f, double r_axis,
                                   double r_curve) {
    double a = r_axis, b = r_curve;
    for (int it = 0; it < 60; ++it) {
        const double mid = std::sqrt(a * b);
        if (zeta(f, mid).on_axis)
            a = mid;
        else
            b = mid;
    }
    return std::sqrt(a * b);
}

}  // namespace detail

inline Balance classify_balance(const RogersFunction& f, const CurveGrid& grid,
                                double margin = pi / 36.0) {
    if (grid.samples.empty() || grid.r_max / grid.r_min < 1e4)
        return Balance::Inconclusive;
    bool any_axis = false;
    for (const auto& s : grid.samples) any_axis |= s.on_axis;
    if (!any_axis && grid.balanced_sup_arg <= pi / 2.0 - margin)
        return Balance::Balanced;
    if (grid.gamma_interval.size() != 1) return Balance::Neither;

    // Single curve interval (r0, rinf): move its axis endpoints to 0 and
    // infinity with the Mobius change of variable and re-test for balance.
    const auto& samples = grid.samples;
    std::size_t i0 = 0, i1 = samples.size();
    while (i0 < samples.size() && samples[i0].on_axis) ++i0;
    while (i1 > i0 && samples[i1 - 1].on_axis) --i1;
    if (i0 >= i1) return Balance::Neither;

    complex zeta0(0.0, 0.0);
    complex zeta_inf(std::numeric_limits<double>::infinity(), 0.0);
    if (i0 > 0) {
        const double r0 =
            detail::refine_axis_endpoint(f, samples[i0 - 1].r, samples[i0].r);
        zeta0 = complex(0.0, samples[i0 - 1].zeta.imag() >= 0.0 ? r0 : -r0);
    }
    if (i1 < samples.size()) {
        const double ri =
            detail::refine_axis_endpoint(f, samples[i1].r, samples[i1 - 1].r);
        zeta_inf = complex(0.0, samples[i1].zeta.imag() >= 0.0 ? ri : -ri);
    }
    if (i0 == 0 && i1 == samples.size()) {
        // single run already spans the whole grid yet the arg margin failed
        return Balance::Neither;
    }
    TransformParams tp;
    tp.zeta0 = zeta0;
    tp.zeta_inf = zeta_inf;
    RogersFunction g = transform(f, TransformKind::Mobius, tp);
    const CurveGrid ggrid = curve_grid(g, 1e-3, 1e3, 48);
    bool g_axis = false;
    for (const auto& s : ggrid.samples) g_axis |= s.on_axis;
    if (!g_axis && ggrid.balanced_sup_arg <= pi / 2.0 - margin)
        return Balance::NearlyBalanced;
    return Balance::Neither;
}

inline Balance classify_balance(const RogersFunction& f, double margin = pi / 36.0) {
    return classify_balance(f, curve_grid(f, 1e-3, 1e3, 64), margin);
}

}  // namespace rogers
