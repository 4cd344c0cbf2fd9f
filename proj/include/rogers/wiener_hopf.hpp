#pragma once

// Stationary Wiener-Hopf factors f_up, f_down of a nonzero Rogers function
// f, with the normalisation f_up(1) = f_down(1): f(xi) = f_up(-i xi) *
// f_down(i xi).  Ratios and products are computed from the real-axis
// contour integral (valid for every nonzero f); the curve-path form over
// gamma_f doubles as a cross-check and as the gateway to complex tau in the
// extended factorisation.

#include <cmath>
#include <complex>

#include <rogers/quad.hpp>
#include <rogers/real_curve.hpp>
#include <rogers/rogers_core.hpp>

namespace rogers {

enum class Side { Up, Down };
enum class WhPath { RealAxis, Curve };
enum class End { Zero, Infinity };

struct WHValue {
    complex value{0.0};
    double err = 0.0;
    WhPath path = WhPath::RealAxis;
};

namespace detail {

// Points handed to the kernels must stay strictly inside C_>.
inline complex nudge_right(complex xi) {
    const double min_re = 1e-8 * (1.0 + std::abs(xi));
    if (xi.real() < min_re) return complex(min_re, xi.imag());
    return xi;
}

inline std::vector<double> kernel_splits(complex xi1, complex xi2) {
    std::vector<double> s = {1.0};
    for (double v : {std::abs(xi1.imag()), std::abs(xi2.imag()), std::abs(xi1),
                     std::abs(xi2)})
        if (v > 0.0) s.push_back(v);
    return s;
}

}  // namespace detail

// log-ratio kernel of eq. (the real-axis contour formula): Up factors use
// 1/(xi + ir), Down factors 1/(xi - ir); the full-line integral is folded
// onto (0, infinity) with log f(-r) = conj(log f(r)).
inline WHValue wh_ratio(const RogersFunction& f, Side side, complex xi1, complex xi2,
                        const QuadOptions& opts = {}) {
    xi1 = detail::nudge_right(xi1);
    xi2 = detail::nudge_right(xi2);
    if (xi1 == xi2) return {complex(1.0), 0.0, WhPath::RealAxis};
    const double sgn = side == Side::Up ? 1.0 : -1.0;
    auto integrand = [&](double r) {
        const complex L = std::log(f.evaluator(complex(r, 0.0)));
        // f overflowing means the 1/r^2-decaying kernel tail is already
        // negligible; cut it rather than propagate inf.
        if (!std::isfinite(L.real())) return complex(0.0);
        const complex ir(0.0, sgn * r);
        const complex kpos = 1.0 / (xi1 + ir) - 1.0 / (xi2 + ir);
        const complex kneg = 1.0 / (xi1 - ir) - 1.0 / (xi2 - ir);
        return (kpos * L + kneg * std::conj(L)) / (2.0 * pi);
    };
    const QuadResult q =
        integrate_halfline(integrand, opts, detail::kernel_splits(xi1, xi2));
    if (!q.converged && q.err_estimate > 1e-6)
        throw NonConvergentError("wh_ratio: contour integral did not converge for " +
                                 f.label);
    WHValue out;
    out.value = std::exp(q.value);
    out.err = q.err_estimate * std::abs(out.value);
    return out;
}

// f_up(xi1) * f_down(xi2); independent of the normalisation.
inline WHValue wh_product(const RogersFunction& f, complex xi1, complex xi2,
                          const QuadOptions& opts = {}) {
    xi1 = detail::nudge_right(xi1);
    xi2 = detail::nudge_right(xi2);
    auto integrand = [&](double r) {
        const complex L = std::log(f.evaluator(complex(r, 0.0)));
        if (!std::isfinite(L.real())) return complex(0.0);
        const complex ir(0.0, r);
        const complex kpos = 1.0 / (xi1 + ir) + 1.0 / (xi2 - ir);
        const complex kneg = 1.0 / (xi1 - ir) + 1.0 / (xi2 + ir);
        return (kpos * L + kneg * std::conj(L)) / (2.0 * pi);
    };
    const QuadResult q =
        integrate_halfline(integrand, opts, detail::kernel_splits(xi1, xi2));
    if (!q.converged && q.err_estimate > 1e-6)
        throw NonConvergentError("wh_product: contour integral did not converge for " +
                                 f.label);
    WHValue out;
    out.value = std::exp(q.value);
    out.err = q.err_estimate * std::abs(out.value);
    return out;
}

// Normalised factor: f_up(1) = f_down(1) = sqrt(f_up(1) f_down(1)).
inline WHValue wh_factor(const RogersFunction& f, Side side, complex xi,
                         const QuadOptions& opts = {}) {
    const WHValue unit = wh_product(f, 1.0, 1.0, opts);
    const complex norm = std::sqrt(unit.value);
    const WHValue ratio = wh_ratio(f, side, xi, 1.0, opts);
    WHValue out;
    out.value = norm * ratio.value;
    out.err = std::abs(norm) * ratio.err + 0.5 * unit.err * std::abs(ratio.value) /
                                               std::max(1e-300, std::abs(norm));
    return out;
}

// Curve-path ratio over gamma_f for balanced f and xi1, xi2 > 0.  Both the
// log-lambda form and the integrated-by-parts Arg form are computed; the
// Arg form is returned with the discrepancy recorded in err.
inline WHValue wh_ratio_curve(const RogersFunction& f, Side side, double xi1,
                              double xi2, const QuadOptions& opts = {}) {
    if (!(xi1 > 0.0 && xi2 > 0.0))
        throw OutOfRangeError("wh_ratio_curve: xi1, xi2 must be positive");
    const complex i(0.0, 1.0);
    auto log_form = [&](double r) {
        const CurveSample s = zeta(f, r);
        if (s.on_axis)
            throw NotBalancedError("wh_ratio_curve: gamma_f meets the axis at r = " +
                                   std::to_string(r));
        complex k;
        if (side == Side::Up)
            k = s.zeta_prime / (i * xi1 - s.zeta) - s.zeta_prime / (i * xi2 - s.zeta);
        else
            k = s.zeta_prime / (i * xi1 + s.zeta) - s.zeta_prime / (i * xi2 + s.zeta);
        return complex(-k.imag() * std::log(s.lam) / pi, 0.0);
    };
    auto arg_form = [&](double r) {
        const CurveSample s = zeta(f, r);
        if (s.on_axis)
            throw NotBalancedError("wh_ratio_curve: gamma_f meets the axis at r = " +
                                   std::to_string(r));
        double a;
        if (side == Side::Up)
            a = std::arg((s.zeta - i * xi2) / (s.zeta - i * xi1));
        else
            a = std::arg((s.zeta + i * xi1) / (s.zeta + i * xi2));
        return complex(a * s.lam_prime / (s.lam * pi), 0.0);
    };
    const std::vector<double> splits = {xi1, xi2, 1.0};
    const QuadResult qa = integrate_halfline(arg_form, opts, splits);
    const QuadResult ql = integrate_halfline(log_form, opts, splits);
    WHValue out;
    out.path = WhPath::Curve;
    out.value = std::exp(qa.value);
    out.err = std::abs(std::exp(ql.value) - out.value) +
              qa.err_estimate * std::abs(out.value);
    return out;
}

// Limit of f_up(xi)/ftilde_up(xi) (or Down) as xi tends to 0 or infinity,
// for f, ftilde with a positive finite limit of f/ftilde at that end.
inline complex wh_limit_ratio(const RogersFunction& f, const RogersFunction& ft,
                              Side side, End at, const QuadOptions& opts = {}) {
    const complex n_f = std::sqrt(wh_product(f, 1.0, 1.0, opts).value);
    const complex n_ft = std::sqrt(wh_product(ft, 1.0, 1.0, opts).value);

    auto quot = [&](double r) {
        return f.evaluator(complex(r, 0.0)) / ft.evaluator(complex(r, 0.0));
    };
    const QuadResult mod = integrate_halfline(
        [&](double r) {
            return complex(std::log(std::abs(quot(r))) / (1.0 + r * r), 0.0);
        },
        opts, {1.0});
    // Writing log q = m + ia, the 1-anchored part of the Up-factor kernel
    // integrates to -(1/pi) Int (m + a r) / (1+r^2) dr, while the x-anchored
    // part tends to sqrt(lim q) at either end; at zero the a-kernel limit
    // r/(x^2+r^2) -> 1/r survives and combines into a/(r (1+r^2)) with the
    // opposite sign.  The Down side flips the sign of every a-term.
    const double w_sign = side == Side::Up ? 1.0 : -1.0;
    const double a_sign = (at == End::Zero ? 1.0 : -1.0) * w_sign;
    const QuadResult arg = integrate_halfline(
        [&](double r) {
            const double w =
                at == End::Zero ? 1.0 / (r * (1.0 + r * r)) : r / (1.0 + r * r);
            return complex(a_sign * std::arg(quot(r)) * w, 0.0);
        },
        opts, {1.0});
    if (!mod.converged || !arg.converged)
        throw NonConvergentError("wh_limit_ratio: end-point integrals diverge");

    std::vector<std::pair<double, complex>> ladder;
    for (double r : {1e4, 1e5, 1e6, 1e7}) {
        const double x = at == End::Zero ? 1.0 / r : r;
        ladder.emplace_back(1.0 / r, quot(x));
    }
    const complex lim = extrapolate_limit(ladder);
    return (n_f / n_ft) * std::exp(-mod.value / pi) * std::sqrt(lim) *
           std::exp(arg.value / pi);
}

}  // namespace rogers
