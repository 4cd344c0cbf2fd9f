#pragma once

// Numerical integration, limit extrapolation, and special functions shared
// by the rest of the library: adaptive Gauss-Kronrod panels, half-line
// integrals under a logarithmic substitution, Cauchy principal values via
// symmetric excision, Richardson-style limit extrapolation, the complex
// dilogarithm, and continuous (unwound) logarithms along sampled paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rogers {

using complex = std::complex<double>;

constexpr double pi = 3.14159265358979323846264338327950288;

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;
    std::vector<double> pv_epsilon_ladder = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
};

struct QuadResult {
    complex value{0.0, 0.0};
    double err_estimate = 0.0;
    bool converged = false;
    long evaluations = 0;
};

struct QuadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BranchCutError : QuadError {
    using QuadError::QuadError;
};
struct InsufficientDataError : QuadError {
    using QuadError::QuadError;
};
struct PathTooCoarseError : QuadError {
    using QuadError::QuadError;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15(const F& g, double a, double b, complex& kronrod, complex& gauss,
          long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    kronrod = complex(0.0);
    gauss = complex(0.0);
    for (int j = 0; j < 8; ++j) {
        const double x = h * gk_nodes[j];
        complex v;
        if (j == 7) {
            v = g(c);
            evals += 1;
        } else {
            v = g(c - x) + g(c + x);
            evals += 2;
        }
        kronrod += kronrod_weights[j] * v;
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * v;
    }
    kronrod *= h;
    gauss *= h;
}

struct Panel {
    double a, b;
    complex value;
    double err;
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration of g over the finite interval [a, b],
// optionally splitting a priori at the supplied interior points.
template <typename F>
QuadResult integrate(const F& g, double a, double b, const QuadOptions& opts = {},
                     const std::vector<double>& split_points = {}) {
    QuadResult res;
    if (!(b > a)) {
        res.converged = true;
        return res;
    }
    std::vector<double> knots = {a, b};
    for (double s : split_points)
        if (s > a && s < b) knots.push_back(s);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    std::vector<detail::Panel> panels;
    complex total(0.0);
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        complex k, gq;
        detail::gk15(g, knots[i], knots[i + 1], k, gq, res.evaluations);
        panels.push_back({knots[i], knots[i + 1], k, std::abs(k - gq)});
        total += k;
        total_err += panels.back().err;
    }

    int subdivisions = 0;
    auto tol = [&](complex v) {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(v));
    };
    while (total_err > tol(total) && subdivisions < opts.max_subdivisions) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].err > panels[worst].err) worst = i;
        detail::Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) break;  // interval at rounding limit
        complex k1, g1, k2, g2;
        detail::gk15(g, p.a, mid, k1, g1, res.evaluations);
        detail::gk15(g, mid, p.b, k2, g2, res.evaluations);
        total += k1 + k2 - p.value;
        total_err += std::abs(k1 - g1) + std::abs(k2 - g2) - p.err;
        panels[worst] = {p.a, mid, k1, std::abs(k1 - g1)};
        panels.push_back({mid, p.b, k2, std::abs(k2 - g2)});
        ++subdivisions;
    }
    res.value = total;
    res.err_estimate = total_err;
    res.converged = total_err <= tol(total);
    return res;
}

// Integral of g over (0, infinity).  Substituting r = e^s maps the half-line
// to s in (-inf, inf); unit-length windows in s are accumulated outward from
// [-1, 1] until two consecutive windows on each side are negligible.
template <typename F>
QuadResult integrate_halfline(const F& g, const QuadOptions& opts = {},
                              const std::vector<double>& split_points = {}) {
    auto h = [&](double s) {
        const double r = std::exp(s);
        return g(r) * r;
    };
    std::vector<double> log_splits;
    for (double s : split_points)
        if (s > 0.0) log_splits.push_back(std::log(s));

    QuadOptions panel_opts = opts;
    panel_opts.max_subdivisions = std::max(64, opts.max_subdivisions / 8);

    QuadResult res = integrate(h, -1.0, 1.0, panel_opts, log_splits);
    complex total = res.value;
    double err = res.err_estimate;
    long evals = res.evaluations;
    bool ok = res.converged;

    auto scale_tol = [&]() {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };
    // The march in each direction must reach past every split point before
    // quiet windows may terminate it: the integrand can be negligible for a
    // long stretch and still carry mass concentrated around a distant split.
    double split_hi = 1.0, split_lo = -1.0;
    for (double s : log_splits) {
        split_hi = std::max(split_hi, s);
        split_lo = std::min(split_lo, s);
    }
    for (int dir = 0; dir < 2; ++dir) {
        int quiet = 0;
        double width = 1.0;
        double edge = dir == 0 ? 1.0 : -1.0;
        while (quiet < 2 && std::abs(edge) < 710.0) {
            const double a = dir == 0 ? edge : edge - width;
            const double b = dir == 0 ? edge + width : edge;
            QuadResult w = integrate(h, a, b, panel_opts, log_splits);
            total += w.value;
            err += w.err_estimate;
            evals += w.evaluations;
            ok = ok && w.converged;
            const bool past_splits = dir == 0 ? b >= split_hi + 1.0 : a <= split_lo - 1.0;
            if (past_splits && std::abs(w.value) < 0.25 * scale_tol())
                ++quiet;
            else
                quiet = 0;
            edge = dir == 0 ? b : a;
            width = std::min(2.0 * width, 64.0);
        }
    }
    QuadResult out;
    out.value = total;
    out.err_estimate = err;
    out.evaluations = evals;
    out.converged = ok && err <= 10.0 * scale_tol();
    return out;
}

// Richardson-style extrapolation (Neville on polynomial in the parameter) of
// a sequence (h_k, v_k) toward parameter 0.  Parameters tending to infinity
// should be passed as 1/parameter by the caller.
inline complex extrapolate_limit(std::vector<std::pair<double, complex>> seq,
                                 double* err_out = nullptr) {
    if (seq.size() < 3)
        throw InsufficientDataError("extrapolate_limit: need at least 3 points");
    std::sort(seq.begin(), seq.end(),
              [](const auto& a, const auto& b) { return std::abs(a.first) > std::abs(b.first); });
    const std::size_t n = seq.size();
    std::vector<complex> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = seq[i].second;
    complex prev = t[n - 1];
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i) {
            const double h0 = seq[i].first;
            const double h1 = seq[i + k].first;
            t[i] = t[i + 1] + (t[i + 1] - t[i]) * (h1 / (h0 - h1));
        }
        if (k == n - 2) prev = t[0];
    }
    if (err_out) *err_out = std::abs(t[0] - prev);
    return t[0];
}

// Cauchy principal value of g over (lo, hi) with a simple pole at s0:
// symmetric excision over the epsilon ladder, then extrapolation to
// excision width zero.  hi may be infinity.
template <typename F>
QuadResult integrate_pv(const F& g, double s0, const QuadOptions& opts = {},
                        double lo = 0.0,
                        double hi = std::numeric_limits<double>::infinity()) {
    if (!(s0 > lo) || !(s0 < hi))
        throw QuadError("integrate_pv: singular point outside interval");
    const std::vector<double>& ladder = opts.pv_epsilon_ladder;
    if (ladder.size() < 3)
        throw InsufficientDataError("integrate_pv: ladder too short");
    const double eps0 = ladder.front();
    const double margin = std::min({eps0 * 4.0, s0 - lo, (hi - s0) * 0.5});

    QuadResult far;
    long evals = 0;
    // Far part: everything outside (s0 - margin, s0 + margin), fixed once.
    {
        QuadResult left = integrate(g, lo, s0 - margin, opts, {});
        QuadResult right;
        if (std::isinf(hi)) {
            auto shifted = [&](double r) { return g(s0 + margin + r); };
            right = integrate_halfline(shifted, opts, {});
        } else {
            right = integrate(g, s0 + margin, hi, opts, {});
        }
        far.value = left.value + right.value;
        far.err_estimate = left.err_estimate + right.err_estimate;
        far.converged = left.converged && right.converged;
        evals = left.evaluations + right.evaluations;
    }

    std::vector<std::pair<double, complex>> ladder_vals;
    double near_err = 0.0;
    for (double eps : ladder) {
        if (!(eps < margin)) continue;
        QuadResult a = integrate(g, s0 - margin, s0 - eps, opts, {});
        QuadResult b = integrate(g, s0 + eps, s0 + margin, opts, {});
        ladder_vals.emplace_back(eps, a.value + b.value);
        near_err = a.err_estimate + b.err_estimate;
        evals += a.evaluations + b.evaluations;
    }
    double extrap_err = 0.0;
    const complex near_val = extrapolate_limit(ladder_vals, &extrap_err);

    QuadResult out;
    out.value = far.value + near_val;
    out.err_estimate = far.err_estimate + near_err + extrap_err;
    out.evaluations = evals;
    out.converged =
        far.converged &&
        out.err_estimate <= 100.0 * std::max(opts.abs_tol,
                                             opts.rel_tol * std::abs(out.value));
    return out;
}

namespace detail {

// Li2 on the central region via the Bernoulli series in u = -log(1-z).
inline complex dilog_series(complex z) {
    // B_{2n}/(2n+2)! coefficients for the series
    // Li2(z) = u - u^2/4 + sum_{n>=1} c_n u^{2n+1}, u = -log(1-z).
    static constexpr std::array<double, 15> c = {
        2.7777777777777777778e-02,  -2.7777777777777777778e-04,
        4.7241118669690098262e-06,  -9.1857730746619635509e-08,
        1.8978869988970999072e-09,  -4.0647616451442255268e-11,
        8.9216910204564525552e-13,  -1.9939295860721075687e-14,
        4.5189800296199181917e-16,  -1.0356517612181247014e-17,
        2.3952186210261867457e-19,  -5.5817858743250093363e-21,
        1.3091507554183212858e-22,  -3.0874198024267402932e-24,
        7.3159756527022034203e-26};
    const complex u = -std::log(complex(1.0) - z);
    const complex u2 = u * u;
    complex sum = u - 0.25 * u2;
    complex up = u * u2;
    for (double cn : c) {
        sum += cn * up;
        up *= u2;
        if (std::abs(up) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace detail

// Principal dilogarithm Li2(z), z not on the cut [1, infinity).
inline complex dilog(complex z) {
    if (z.imag() == 0.0 && z.real() >= 1.0) {
        if (z.real() == 1.0) return complex(pi * pi / 6.0, 0.0);
        throw BranchCutError("dilog: argument on the branch cut [1, inf)");
    }
    const double pi2_6 = pi * pi / 6.0;
    // Inversion: map |z| > 1 into the unit disc.
    if (std::abs(z) > 1.0) {
        const complex inv = dilog(1.0 / z);
        const complex l = std::log(-z);
        return -inv - pi2_6 - 0.5 * l * l;
    }
    // Reflection: keep the series argument away from 1.
    if (z.real() > 0.5) {
        const complex refl = dilog(complex(1.0) - z);
        return pi2_6 - std::log(z) * std::log(complex(1.0) - z) - refl;
    }
    return detail::dilog_series(z);
}

// Continuous logarithm along an ordered path of nonzero samples, anchored at
// the principal logarithm of the first sample.
inline std::vector<complex> continuous_log_samples(const std::vector<complex>& values) {
    std::vector<complex> out;
    out.reserve(values.size());
    if (values.empty()) return out;
    out.push_back(std::log(values.front()));
    for (std::size_t k = 1; k < values.size(); ++k) {
        const complex ratio = values[k] / values[k - 1];
        const double dphi = std::arg(ratio);
        if (std::abs(dphi) > pi - 1e-12)
            throw PathTooCoarseError(
                "continuous_log_samples: adjacent ratio crosses the negative axis");
        const complex prev = out.back();
        out.push_back(complex(std::log(std::abs(values[k])), prev.imag() + dphi));
    }
    return out;
}

}  // namespace rogers
