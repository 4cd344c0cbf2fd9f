#pragma once

// Fluctuation theory of the Levy processes attached to Rogers functions:
// Laplace transforms of the running supremum/infimum (general balanced case
// and the explicit stable specialisation), the sigma-resolvent, the Mellin
// transform, eigenfunction phases and stable eigenfunctions, the completeness
// identity, and a Monte Carlo oracle with exact stable increments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rogers/catalog.hpp"
#include "rogers/extended_wh.hpp"
#include "rogers/quad.hpp"
#include "rogers/real_curve.hpp"
#include "rogers/rogers_core.hpp"
#include "rogers/wiener_hopf.hpp"

namespace rogers {

struct SupremumQuery {
    double t = 1.0;
    double xi = 1.0;
    Side side = Side::Up;
};

struct PhaseData {
    double r = 0.0;
    double theta_up = 0.0;
    double theta_down = 0.0;
};

struct EigenfunctionSample {
    double r = 0.0;
    double x = 0.0;
    double F = 0.0;
    double oscillatory_part = 0.0;
    double G = 0.0;
};

namespace detail {

inline QuadOptions psi_inner_options(const QuadOptions& opts) {
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol, 1e-9);
    inner.abs_tol = std::max(opts.abs_tol, 1e-13);
    return inner;
}

}  // namespace detail

// Psi_{r side}(xi) = f_[zeta(r)]^side(xi) / f_[zeta(r)]^side(0+).  The
// epsilon -> 0 limit of wh_ratio(f_[zeta(r)], side, xi, eps) is taken in
// closed form: in the log-ratio kernel the eps terms concentrate to
// -pi log f_[zeta](0+) plus a -2 sgn Im log f_[zeta](r) / r tail, so a single
// contour integral gives the limit directly.  (Finite-eps extrapolation over
// an eps ladder converges only like a fractional power of eps near the ends
// of the curve and does not settle there; if eps_ladder is supplied it is
// used as a cross-check at the largest rung only.)
inline complex psi_ratio(const RogersFunction& f, Side side, double r, complex xi,
                         const std::vector<double>& eps_ladder = {},
                         const QuadOptions& opts = {}) {
    if (!(r > 0.0)) throw DomainViolationError("psi_ratio: r must be positive");
    const CurveSample cs = zeta(f, r);
    if (cs.on_axis)
        throw NotBalancedError("psi_ratio: curve of real values meets the axis at r = " +
                               std::to_string(r));
    const RogersFunction fq = difference_quotient(f, cs.zeta);
    const QuadOptions inner = detail::psi_inner_options(opts);
    xi = detail::nudge_right(xi);
    const double sgn = side == Side::Up ? 1.0 : -1.0;

    // f_[zeta](0+) = |zeta|^2 / (f(zeta) - f(0)) is real and positive.
    complex f0 = fq.evaluator(complex(0.0));
    if (!(f0.real() > 0.0) || !std::isfinite(f0.real()))
        f0 = fq.evaluator(complex(1e-12 * r, 0.0));
    if (!(f0.real() > 0.0))
        throw NonConvergentError("psi_ratio: quotient not positive at 0 for " + f.label);
    const double a0 = std::log(f0.real());

    auto integrand = [&](double rr) {
        const complex L = std::log(fq.evaluator(complex(rr, 0.0)));
        const complex ir(0.0, sgn * rr);
        return (L / (xi + ir) + std::conj(L) / (xi - ir) -
                2.0 * sgn * L.imag() / rr) /
               (2.0 * pi);
    };
    const QuadResult q = integrate_halfline(
        integrand, inner, detail::kernel_splits(xi, complex(r, 0.0)));
    if (!q.converged && q.err_estimate > 1e-6)
        throw NonConvergentError("psi_ratio: contour integral did not converge for " +
                                 f.label);
    const complex v = std::exp(q.value - 0.5 * a0);
    if (!eps_ladder.empty()) {
        const complex probe = wh_ratio(fq, side, xi, eps_ladder.front(), inner).value;
        if (!(std::abs(probe - v) <= 0.5 * std::abs(v)))
            throw NonConvergentError("psi_ratio: finite-eps cross-check failed for " +
                                     f.label);
    }
    return v;
}

namespace detail {

inline double sup_kernel(Side side, double xi, const CurveSample& cs) {
    const double sgn = side == Side::Up ? -1.0 : 1.0;
    return xi * cs.zeta.real() /
           (xi * xi + 2.0 * sgn * xi * cs.zeta.imag() + cs.r * cs.r);
}

}  // namespace detail

// E exp(-xi X^up_t)  = (1/pi) Int_0^inf Psi_{r up}(xi)
//                      * xi Re zeta / (xi^2 - 2 xi Im zeta + r^2)
//                      * (lambda'/lambda) e^{-t lambda} dr,
// E exp(+xi X^down_t) mirrors with +2 xi Im zeta and Psi_{r down}.
inline double extreme_laplace(const RogersFunction& f, const SupremumQuery& q,
                              const QuadOptions& opts = {}) {
    if (!(q.t > 0.0) || !(q.xi > 0.0))
        throw DomainViolationError("extreme_laplace: t and xi must be positive");
    auto integrand = [&](double r) -> complex {
        const CurveSample cs = zeta(f, r);
        if (cs.on_axis)
            throw NotBalancedError("extreme_laplace: f is not balanced at r = " +
                                   std::to_string(r));
        const double decay = q.t * cs.lam;
        if (decay > 700.0) return complex(0.0);
        const complex psi = psi_ratio(f, q.side, r, q.xi, {}, opts);
        return psi * detail::sup_kernel(q.side, q.xi, cs) *
               (cs.lam_prime / cs.lam) * std::exp(-decay);
    };
    QuadOptions outer = opts;
    outer.rel_tol = std::max(opts.rel_tol, 1e-8);
    outer.abs_tol = std::max(opts.abs_tol, 1e-11);
    const QuadResult res = integrate_halfline(integrand, outer, {q.xi});
    const double value = res.value.real() / pi;
    if (!res.converged && res.err_estimate > 1e-5 * std::max(1.0, std::abs(value)))
        throw NonConvergentError("extreme_laplace: quadrature did not converge for " +
                                 f.label);
    return value;
}

// Cached-node form of the same integral: the r-quadrature nodes and the
// r-dependent factors are precomputed once per (f, side, xi), after which each
// t-evaluation is a weighted sum of e^{-t lambda_i}.  Useful when the Laplace
// transform is queried many times, e.g. under an outer time-quadrature.
class SupLaplaceEvaluator {
  public:
    SupLaplaceEvaluator(const RogersFunction& f, Side side, double xi,
                        double t_min = 1e-2, const QuadOptions& opts = {}) {
        if (!(xi > 0.0) || !(t_min > 0.0))
            throw DomainViolationError("SupLaplaceEvaluator: xi and t_min must be positive");
        // Lower cutoff: the kernel mass sits near r ~ xi; below xi * 1e-7 the
        // log-space integrand is O(r) and the truncated tail is negligible.
        const double r_lo = xi * 1e-7;
        // Upper cutoff: e^{-t lambda} has decayed past recovery for all
        // admissible t once t_min * lambda(r) > 46.
        double r_hi = std::max(1.0, xi);
        while (zeta(f, r_hi).lam * t_min < 46.0 && r_hi < 1e12) r_hi *= 2.0;
        const double s_lo = std::log(r_lo), s_hi = std::log(r_hi);
        const int n_panels = static_cast<int>(std::ceil((s_hi - s_lo) / 0.25));
        const double h = (s_hi - s_lo) / n_panels;
        for (int p = 0; p < n_panels; ++p) {
            const double c = s_lo + (p + 0.5) * h;
            for (int j = 0; j < 8; ++j) {
                const double x = 0.5 * h * quad_nodes()[j];
                if (j == 7)
                    push_node(f, side, xi, c, 0.5 * h * quad_weights()[j], opts);
                else {
                    push_node(f, side, xi, c - x, 0.5 * h * quad_weights()[j], opts);
                    push_node(f, side, xi, c + x, 0.5 * h * quad_weights()[j], opts);
                }
            }
        }
    }

    // E exp(-xi X^side_t); valid for t >= the t_min the nodes were sized for.
    double laplace(double t) const {
        if (!(t > 0.0))
            throw DomainViolationError("SupLaplaceEvaluator: t must be positive");
        double acc = 0.0;
        for (std::size_t i = 0; i < coef_.size(); ++i) {
            const double d = t * lam_[i];
            if (d < 700.0) acc += coef_[i] * std::exp(-d);
        }
        return acc;
    }

    // Int_0^inf laplace(t) sigma e^{-sigma t} dt, evaluated in closed form on
    // the cached nodes (the t-dependence of every node is exactly e^{-t lam}).
    double resolvent(double sigma) const {
        if (!(sigma > 0.0))
            throw DomainViolationError("SupLaplaceEvaluator: sigma must be positive");
        double acc = 0.0;
        for (std::size_t i = 0; i < coef_.size(); ++i)
            acc += coef_[i] * sigma / (sigma + lam_[i]);
        return acc;
    }

  private:
    static const std::array<double, 8>& quad_nodes() { return detail::gk_nodes; }
    static const std::array<double, 8>& quad_weights() {
        return detail::kronrod_weights;
    }

    void push_node(const RogersFunction& f, Side side, double xi, double s,
                   double w, const QuadOptions& opts) {
        const double r = std::exp(s);
        const CurveSample cs = zeta(f, r);
        if (cs.on_axis)
            throw NotBalancedError("SupLaplaceEvaluator: f is not balanced at r = " +
                                   std::to_string(r));
        const complex psi = psi_ratio(f, side, r, xi, {}, opts);
        coef_.push_back(w * r *
                        (psi * detail::sup_kernel(side, xi, cs)).real() *
                        cs.lam_prime / cs.lam / pi);
        lam_.push_back(cs.lam);
    }

    std::vector<double> coef_;
    std::vector<double> lam_;
};

// kappa(sigma; 0+)/kappa(sigma; xi), the time-Laplace transform of the
// supremum/infimum Laplace transform.  kappa at xi = 0 is evaluated through
// the exact xi -> 0 limit of the normalisation integral.
inline double extreme_laplace_resolvent(const RogersFunction& f, Side side,
                                        double sigma, double xi,
                                        const QuadOptions& opts = {}) {
    if (!(sigma > 0.0) || !(xi > 0.0))
        throw DomainViolationError(
            "extreme_laplace_resolvent: sigma and xi must be positive");
    const KappaValue k0 = kappa(f, side, sigma, complex(0.0), opts);
    const KappaValue kx = kappa(f, side, sigma, xi, opts);
    return (k0.value / kx.value).real();
}

namespace detail {

// (v - u)/(v^alpha - u^alpha), written through expm1/log1p so the removable
// singularity at v = u stays fully accurate.
inline double power_diff_ratio(double u, double v, double alpha) {
    const double w = (v - u) / u;
    if (std::abs(w) < 1e-12) return std::pow(u, 1.0 - alpha) / alpha;
    return w * std::pow(u, 1.0 - alpha) / std::expm1(alpha * std::log1p(w));
}

// I(u) of the stable supremum formula; at alpha = 1 it reduces to the printed
// one-stable form (the (v-u)/(v-u) factor collapses to 1).
inline double stable_sup_I(double u, double alpha, double rho,
                           const QuadOptions& opts) {
    const double c1 = std::cos(rho * pi);
    const double s1 = std::sin(rho * pi);
    const double c2 = std::cos(2.0 * rho * pi);
    auto g = [&](double v) -> complex {
        const double q = u * u - 2.0 * u * v * c2 + v * v;
        const double arg = power_diff_ratio(u, v, alpha) * std::sqrt(q);
        return complex(s1 / (1.0 + 2.0 * v * c1 + v * v) * std::log(arg), 0.0);
    };
    return integrate_halfline(g, opts, {u}).value.real() / pi;
}

// J(u) of the stable supremum formula (no principal value needed: the Arg
// kernel is bounded and the 1/v factor is tamed by Arg ~ v near 0).
inline double stable_sup_J(double u, double rho, const QuadOptions& opts) {
    const double c1 = std::cos(rho * pi);
    const double c2 = std::cos(2.0 * rho * pi);
    const double s2 = std::sin(2.0 * rho * pi);
    auto g = [&](double v) -> complex {
        const double a = std::atan2(v * s2, u - v * c2);
        return complex((1.0 + v * c1) / ((1.0 + 2.0 * v * c1 + v * v) * v) * a, 0.0);
    };
    return integrate_halfline(g, opts, {u}).value.real() / pi;
}

inline void require_rho_interior(const StableParams& p, const char* who) {
    if (!(p.rho > 0.0 && p.rho < 1.0))
        throw RhoDegenerateError(std::string(who) +
                                 ": positivity parameter must lie in (0, 1)");
}

}  // namespace detail

// E exp(-xi X^up_t) for the strictly stable process (alpha, rho, k):
//   (alpha/pi) Int_0^inf u^{-(2-alpha) rho} sin(rho pi)/(1 + 2u cos(rho pi) + u^2)
//                        exp(I(u) + J(u) - k^alpha t xi^alpha u^alpha
//                                          / cos((2 rho - 1) alpha pi/2)) du.
// The Down transform is the same formula with rho replaced by 1 - rho.
inline double stable_sup_laplace(const StableParams& p, double t, double xi,
                                 const QuadOptions& opts = {},
                                 Side side = Side::Up) {
    detail::require_rho_interior(p, "stable_sup_laplace");
    if (!(t > 0.0) || !(xi > 0.0))
        throw DomainViolationError("stable_sup_laplace: t and xi must be positive");
    const double alpha = p.alpha;
    const double rho = side == Side::Up ? p.rho : 1.0 - p.rho;
    const double c1 = std::cos(rho * pi);
    const double s1 = std::sin(rho * pi);
    const double scale = std::pow(p.k, alpha) * t * std::pow(xi, alpha) /
                         std::cos((2.0 * rho - 1.0) * alpha * pi / 2.0);
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol, 1e-10);
    auto g = [&](double u) -> complex {
        const double ex = detail::stable_sup_I(u, alpha, rho, inner) +
                          detail::stable_sup_J(u, rho, inner) -
                          scale * std::pow(u, alpha);
        if (ex < -700.0) return complex(0.0);
        return complex(std::pow(u, -(2.0 - alpha) * rho) * s1 /
                           (1.0 + 2.0 * u * c1 + u * u) * std::exp(ex),
                       0.0);
    };
    QuadOptions outer = opts;
    outer.rel_tol = std::max(opts.rel_tol, 1e-9);
    const QuadResult res = integrate_halfline(g, outer, {});
    if (!res.converged && res.err_estimate > 1e-6 * std::max(1.0, std::abs(res.value)))
        throw NonConvergentError("stable_sup_laplace: outer quadrature diverges");
    return res.value.real() * alpha / pi;
}

// Density of X^up_t for the one-stable process: with
// u = x cos((2 rho - 1) pi/2)/(k t),
//   P(X^up_t in dx)/dx = (1/pi) u^{-rho} sin(rho pi)/(1 + 2u cos(rho pi) + u^2)
//                        e^{I(u) + J(u)} du/dx,
// including the du/dx Jacobian so the result is a density in x.
inline double stable1_sup_density(const StableParams& p, double t, double x,
                                  const QuadOptions& opts = {}) {
    if (p.alpha != 1.0)
        throw InvalidSpecError("stable1_sup_density: requires alpha = 1");
    detail::require_rho_interior(p, "stable1_sup_density");
    if (!(t > 0.0) || !(x > 0.0))
        throw DomainViolationError("stable1_sup_density: t and x must be positive");
    const double rho = p.rho;
    const double dudx = std::cos((2.0 * rho - 1.0) * pi / 2.0) / (p.k * t);
    const double u = x * dudx;
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol, 1e-10);
    const double ex = detail::stable_sup_I(u, 1.0, rho, inner) +
                      detail::stable_sup_J(u, rho, inner);
    const double c1 = std::cos(rho * pi);
    return std::pow(u, -rho) * std::sin(rho * pi) /
           (1.0 + 2.0 * u * c1 + u * u) * std::exp(ex) * dudx / pi;
}

// Mellin transform of the stable supremum, negative-moment convention:
//   E (X^up_t)^{-s} = (t sigma)^{-s/alpha} / (Gamma(s) Gamma(1 - s/alpha))
//                     * Int_0^inf (kappa(sigma; 0)/kappa(sigma; xi)) xi^{s-1} dxi,
// valid on the strip 0 < s < rho alpha.  (By Fubini the integral equals
// Gamma(s) Gamma(1 - s/alpha) sigma^{s/alpha} E (X^up_1)^{-s}; it is the
// negative moment, not the positive one, that the kernel xi^{s-1} produces.)
inline double stable_mellin(const StableParams& p, double t, double sigma, double s,
                            const QuadOptions& opts = {}) {
    detail::require_rho_interior(p, "stable_mellin");
    if (!(t > 0.0) || !(sigma > 0.0))
        throw DomainViolationError("stable_mellin: t and sigma must be positive");
    const double g2arg = 1.0 - s / p.alpha;
    if (g2arg <= 0.0 && g2arg == std::floor(g2arg))
        throw GammaPoleError("stable_mellin: 1 - s/alpha is a nonpositive integer");
    if (!(s > 0.0 && s < p.rho * p.alpha))
        throw NonConvergentError("stable_mellin: s outside the strip (0, rho alpha)");
    const RogersFunction f = make_stable(p);
    const complex k0 = kappa(f, Side::Up, sigma, complex(0.0), opts).value;
    auto resolvent = [&](double xi) {
        return (k0 / kappa(f, Side::Up, sigma, xi, opts).value).real();
    };
    QuadOptions outer = opts;
    outer.rel_tol = std::max(opts.rel_tol, 1e-8);
    double integral;
    if (s >= 0.25) {
        auto g = [&](double xi) -> complex {
            return complex(resolvent(xi) * std::pow(xi, s - 1.0), 0.0);
        };
        integral = integrate_halfline(g, outer, {1.0}).value.real();
    } else {
        // Near s = 0 the xi^{s-1} mass below any finite cutoff dominates;
        // subtract 1/(1+xi), whose Mellin transform Gamma(s) Gamma(1-s) is
        // exact, and integrate only the s-regular remainder.
        auto g = [&](double xi) -> complex {
            return complex((resolvent(xi) - 1.0 / (1.0 + xi)) * std::pow(xi, s - 1.0),
                           0.0);
        };
        integral = integrate_halfline(g, outer, {1.0}).value.real() +
                   std::tgamma(s) * std::tgamma(1.0 - s);
    }
    return std::pow(t * sigma, -s / p.alpha) /
           (std::tgamma(s) * std::tgamma(g2arg)) * integral;
}

// Eigenfunction phases theta_up(r) = Arg f_[zeta]^up(i conj zeta),
// theta_down(r) = Arg f_[zeta]^down(i zeta).  Whichever evaluation point lies
// in the open right half-plane is computed directly from the factor ratio
// (the factor is positive at 1, so the ratio carries the full argument); the
// other follows from theta_up - theta_down = Arg f'(zeta) = -Arg zeta'(r).
inline PhaseData theta(const RogersFunction& f, Side side, double r,
                       const QuadOptions& opts = {}) {
    if (!(r > 0.0)) throw DomainViolationError("theta: r must be positive");
    const CurveSample cs = zeta(f, r);
    if (cs.on_axis)
        throw NotOnCurveError("theta: r outside |gamma_f| for " + f.label);
    const complex zt = cs.zeta;
    const RogersFunction fq = difference_quotient(f, zt);
    const QuadOptions inner = detail::psi_inner_options(opts);
    const double dphase = std::arg(fprime(f, zt));  // theta_up - theta_down
    const double y = zt.imag();
    PhaseData out;
    out.r = r;
    const double axis_tol = 1e-9 * r;
    auto direct = [&](Side sd, complex pt) {
        return std::arg(wh_ratio(fq, sd, pt, 1.0, inner).value);
    };
    if (y > axis_tol) {
        out.theta_up = direct(Side::Up, complex(y, zt.real()));
        out.theta_down = out.theta_up - dphase;
    } else if (y < -axis_tol) {
        out.theta_down = direct(Side::Down, complex(-y, zt.real()));
        out.theta_up = out.theta_down + dphase;
    } else {
        // Symmetric curve point: i conj zeta sits on the imaginary axis, so
        // approach it from the right along a shrinking ladder.
        const Side sd = side;
        const complex pt = sd == Side::Up ? complex(y, zt.real())
                                          : complex(-y, zt.real());
        std::vector<std::pair<double, complex>> seq;
        for (double d : {1e-2, 3e-3, 1e-3, 3e-4})
            seq.emplace_back(d, complex(direct(sd, pt + d * r), 0.0));
        const double ph = extrapolate_limit(seq).real();
        if (sd == Side::Up) {
            out.theta_up = ph;
            out.theta_down = ph - dphase;
        } else {
            out.theta_down = ph;
            out.theta_up = ph + dphase;
        }
    }
    return out;
}

namespace detail {

// I(u) of the stable eigenfunction lemma; the removable log singularity at
// v = 1 is the alpha-power difference quotient again.
inline double stable_ee_I(double u, double alpha, double rho,
                          const QuadOptions& opts) {
    const double c1 = std::cos(rho * pi);
    const double s1 = std::sin(rho * pi);
    const double c2 = std::cos(2.0 * rho * pi);
    const double s2 = std::sin(2.0 * rho * pi);
    auto g = [&](double v) -> complex {
        const double q1 = 1.0 - 2.0 * v * c2 + v * v;
        const double arg = power_diff_ratio(1.0, v, alpha) * std::sqrt(q1);
        const double kernel = 2.0 * u * s1 / (u * u - 2.0 * u * v * c1 + v * v) -
                              s2 / q1;
        return complex(-0.5 * kernel * std::log(arg), 0.0);
    };
    return integrate_halfline(g, opts, {1.0, u}).value.real() / pi;
}

// J(u) of the stable eigenfunction lemma; genuine principal value at v = 1.
inline double stable_ee_J(double u, double rho, const QuadOptions& opts) {
    const double c1 = std::cos(rho * pi);
    const double c2 = std::cos(2.0 * rho * pi);
    const double s2 = std::sin(2.0 * rho * pi);
    auto g = [&](double v) -> complex {
        const double a = std::atan2(v * s2, 1.0 - v * c2);
        const double kernel =
            (2.0 * v - 2.0 * u * c1) / (u * u - 2.0 * u * v * c1 + v * v) +
            1.0 / (1.0 - v) - (v - c2) / (1.0 - 2.0 * v * c2 + v * v);
        return complex(0.5 * kernel * a, 0.0);
    };
    return integrate_pv(g, 1.0, opts).value.real() / pi;
}

}  // namespace detail

// Stable eigenfunction F_{f side}(r; x) = e^{-r x cos(rho pi)}
// sin(r x sin(rho pi) + (1-rho)(1-alpha rho) pi/2) - G(r x), with G the
// completely monotone part given by the outer u-integral of the lemma.
inline EigenfunctionSample stable_eigenfunction(const StableParams& p, Side side,
                                                double r, double x,
                                                const QuadOptions& opts = {}) {
    detail::require_rho_interior(p, "stable_eigenfunction");
    if (!(r > 0.0) || !(x > 0.0))
        throw DomainViolationError("stable_eigenfunction: r and x must be positive");
    const double alpha = p.alpha;
    const double rho = side == Side::Up ? p.rho : 1.0 - p.rho;
    const double phase = (1.0 - rho) * (1.0 - alpha * rho) * pi / 2.0;
    const double theta_curve = (p.rho - 0.5) * pi;
    const double y = r * x;
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol, 1e-9);
    const double cpr = std::cos(alpha * pi * rho);
    const double spr = std::sin(alpha * pi * rho);
    auto g = [&](double u) -> complex {
        const double ua = std::pow(u, alpha);
        const double ex = detail::stable_ee_I(u, alpha, rho, inner) +
                          detail::stable_ee_J(u, rho, inner) - y * u;
        if (ex < -700.0) return complex(0.0);
        return complex(spr * ua / (1.0 + 2.0 * ua * cpr + ua * ua) * std::exp(ex),
                       0.0);
    };
    QuadOptions outer = opts;
    outer.rel_tol = std::max(opts.rel_tol, 1e-8);
    const QuadResult res = integrate_halfline(g, outer, {1.0});
    EigenfunctionSample out;
    out.r = r;
    out.x = x;
    out.G = std::sqrt(alpha * std::cos(theta_curve) / 2.0) *
            res.value.real() / pi;
    out.oscillatory_part =
        std::exp(-y * std::cos(rho * pi)) * std::sin(y * std::sin(rho * pi) + phase);
    out.F = out.oscillatory_part - out.G;
    return out;
}

// EXPERIMENTAL.  Conjectured eigenfunction expansion of the supremum law,
//   P(X^up_t < x) = (1/pi) Int_0^inf [|f_[zeta]^up(i conj zeta)| / f_[zeta]^up(0+)]
//                   F_up(r; x) e^{-t lambda(r)} lambda'(r) / lambda(r) dr,
// implemented for the stable family only, where the weight is r-independent
// by scaling and F_up is available in closed-ish form.  Cross-checked against
// the Monte Carlo oracle and the one-stable density; not a production path.
inline double experimental_sup_cdf(const StableParams& p, double t, double x,
                                   const QuadOptions& opts = {}) {
    detail::require_rho_interior(p, "experimental_sup_cdf");
    if (!(t > 0.0) || !(x > 0.0))
        throw DomainViolationError("experimental_sup_cdf: t and x must be positive");
    const RogersFunction f = make_stable(p);
    const CurveSample c1 = zeta(f, 1.0);
    const complex zt = c1.zeta;
    // Weight |Psi_{r up}(i conj zeta(r))| at r = 1 (any r: power-type scaling).
    double weight;
    const double axis_tol = 1e-9;
    if (zt.imag() > axis_tol) {
        weight = std::abs(psi_ratio(f, Side::Up, 1.0, complex(zt.imag(), zt.real()),
                                    {}, opts));
    } else if (zt.imag() < -axis_tol) {
        // |Psi_up(i conj zeta)| |Psi_down(i zeta)| = (2 Re zeta / |f'(zeta)|)
        //                                            * lambda / r^2.
        const double pair_mag =
            2.0 * zt.real() / std::abs(fprime(f, zt)) * c1.lam;
        const double mag_dn = std::abs(psi_ratio(
            f, Side::Down, 1.0, complex(-zt.imag(), zt.real()), {},
            opts));
        weight = pair_mag / mag_dn;
    } else {
        std::vector<std::pair<double, complex>> seq;
        for (double d : {1e-2, 3e-3, 1e-3})
            seq.emplace_back(
                d, complex(std::abs(psi_ratio(f, Side::Up, 1.0,
                                              complex(d, zt.real()),
                                              {}, opts)),
                           0.0));
        weight = extrapolate_limit(seq).real();
    }
    // Fixed log-space panels in r, with the panel width capped so that each
    // panel covers at most a fraction of an oscillation period of F(rx);
    // beyond y = rx ~ 60 the completely monotone part G(y) has decayed below
    // the target accuracy and only the trivial oscillation is evaluated.
    QuadOptions inner = opts;
    inner.rel_tol = std::max(opts.rel_tol, 1e-7);
    const double osc_freq = x * std::max(std::sin(p.rho * pi), 0.1);
    const double phase = (1.0 - p.rho) * (1.0 - p.alpha * p.rho) * pi / 2.0;
    const double cpr = std::cos(p.rho * pi), spr = std::sin(p.rho * pi);
    const double r_lo = 1e-6 / x;
    double r_hi = std::max(1.0, 1.0 / x);
    while (zeta(f, r_hi).lam * t < 46.0 && r_hi < 1e12) r_hi *= 2.0;
    const double s_lo = std::log(r_lo), s_hi = std::log(r_hi);
    auto node = [&](double s) -> double {
        const double r = std::exp(s);
        const CurveSample cs = zeta(f, r);
        if (t * cs.lam > 700.0) return 0.0;
        double F;
        if (r * x > 60.0) {
            const double y = r * x;
            F = std::exp(-y * cpr) * std::sin(y * spr + phase);
        } else {
            F = stable_eigenfunction(p, Side::Up, r, x, inner).F;
        }
        return F * std::exp(-t * cs.lam) * cs.lam_prime / (pi * cs.lam) * r;
    };
    double acc = 0.0;
    double s = s_lo;
    while (s < s_hi) {
        const double h =
            std::min({0.5, 1.0 / (osc_freq * std::exp(s) + 1e-300), s_hi - s});
        const double c = s + 0.5 * h;
        for (int j = 0; j < 8; ++j) {
            const double w = 0.5 * h * detail::kronrod_weights[j];
            if (j == 7)
                acc += w * node(c);
            else
                acc += w * (node(c - 0.5 * h * detail::gk_nodes[j]) +
                            node(c + 0.5 * h * detail::gk_nodes[j]));
        }
        s += h;
    }
    return weight * acc;
}

// Completeness identity of the generalised eigenfunction expansion:
//   (2/pi) Int_0^inf LF_up(r; xi1) LF_down(r; xi2) |zeta'(r)| dr = 1/(xi1+xi2),
// where LF_up(r; xi) = Re zeta / |f_[zeta]^up(i conj zeta)|
//                      * f_[zeta]^up(xi) / ((xi + i zeta)(xi - i conj zeta))
// and LF_down mirrors.  Returns the left-hand side times (xi1 + xi2).
inline double completeness_check(const RogersFunction& f, double xi1, double xi2,
                                 const QuadOptions& opts = {}) {
    if (!(xi1 > 0.0) || !(xi2 > 0.0))
        throw DomainViolationError("completeness_check: xi1, xi2 must be positive");
    const QuadOptions inner = detail::psi_inner_options(opts);
    const complex i(0.0, 1.0);
    auto integrand = [&](double r) -> complex {
        const CurveSample cs = zeta(f, r);
        if (cs.on_axis)
            throw NotBalancedError("completeness_check: f is not balanced at r = " +
                                   std::to_string(r));
        const complex zt = cs.zeta;
        const complex cz = std::conj(zt);
        const RogersFunction fq = difference_quotient(f, zt);
        const double fu1 = std::sqrt(wh_product(fq, 1.0, 1.0, inner).value.real());
        const complex fup = wh_ratio(fq, Side::Up, xi1, 1.0, inner).value * fu1;
        const complex fdn = wh_ratio(fq, Side::Down, xi2, 1.0, inner).value * fu1;
        // |f_[zeta]^up(-i zeta) f_[zeta]^down(i zeta)| = |f_[zeta](zeta)|
        const double pair_mag = 2.0 * zt.real() / std::abs(fprime(f, zt));
        double mag_up;  // |f_[zeta]^up(i conj zeta)|
        const double axis_tol = 1e-9 * r;
        if (zt.imag() > axis_tol) {
            mag_up = std::abs(wh_ratio(fq, Side::Up, complex(zt.imag(), zt.real()),
                                       1.0, inner)
                                  .value) *
                     fu1;
        } else if (zt.imag() < -axis_tol) {
            const double mag_dn =
                std::abs(wh_ratio(fq, Side::Down, complex(-zt.imag(), zt.real()),
                                  1.0, inner)
                             .value) *
                fu1;
            mag_up = pair_mag / mag_dn;
        } else {
            // i conj zeta on the imaginary axis: rightward ladder.
            std::vector<std::pair<double, complex>> seq;
            for (double d : {1e-2, 3e-3, 1e-3})
                seq.emplace_back(
                    d, complex(std::abs(wh_ratio(fq, Side::Up,
                                                 complex(d * r, zt.real()), 1.0,
                                                 inner)
                                            .value),
                               0.0));
            mag_up = extrapolate_limit(seq).real() * fu1;
        }
        const double mag_dn = pair_mag / mag_up;
        const complex lf_up =
            zt.real() / mag_up * fup / ((xi1 + i * zt) * (xi1 - i * cz));
        const complex lf_dn =
            zt.real() / mag_dn * fdn / ((xi2 - i * zt) * (xi2 + i * cz));
        return lf_up * lf_dn * std::abs(cs.zeta_prime);
    };
    QuadOptions outer = opts;
    outer.rel_tol = std::max(opts.rel_tol, 1e-7);
    outer.abs_tol = std::max(opts.abs_tol, 1e-10);
    const QuadResult res = integrate_halfline(integrand, outer, {xi1, xi2});
    if (!res.converged && res.err_estimate > 1e-5 * std::max(1.0, std::abs(res.value)))
        throw NonConvergentError("completeness_check: quadrature did not converge");
    return res.value.real() * 2.0 / pi * (xi1 + xi2);
}

// ---------------------------------------------------------------------------
// Monte Carlo oracle: exact stable increments on a uniform grid, grid suprema
// at two step resolutions, Richardson extrapolation of the discretisation
// bias in n^{-1/alpha}.

struct McEstimate {
    double xi = 0.0;
    double value = 0.0;
    double std_err = 0.0;
};

struct McProbability {
    double x = 0.0;
    double value = 0.0;
    double std_err = 0.0;
};

struct McSummary {
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;  // fine resolution; the coarse grid halves it
    std::vector<McEstimate> estimates;
    std::vector<McProbability> probabilities;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One exact stable increment over time step dt (Chambers-Mallows-Stuck).
class StableIncrementSampler {
  public:
    StableIncrementSampler(const StableParams& p, double dt)
        : alpha_(p.alpha), k_(p.k), dt_(dt) {
        if (alpha_ == 2.0) {
            normal_scale_ = k_ * std::sqrt(2.0 * dt);
        } else if (alpha_ == 1.0) {
            cauchy_scale_ = k_ * dt;
            drift_ = k_ * std::tan((2.0 * p.rho - 1.0) * pi / 2.0) * dt;
        } else {
            const double bt = p.beta * std::tan(pi * alpha_ / 2.0);
            theta0_ = std::atan(bt) / alpha_;
            cms_scale_ = k_ * std::pow(dt, 1.0 / alpha_) *
                         std::pow(1.0 + bt * bt, 0.5 / alpha_);
        }
    }

    template <typename Rng>
    double operator()(Rng& rng) const {
        if (alpha_ == 2.0) return normal_scale_ * normal_(rng);
        const double v = uniform_angle_(rng);
        if (alpha_ == 1.0) return cauchy_scale_ * std::tan(v) + drift_;
        const double w = exponential_(rng);
        const double x = std::sin(alpha_ * (v + theta0_)) /
                         std::pow(std::cos(v), 1.0 / alpha_) *
                         std::pow(std::cos(v - alpha_ * (v + theta0_)) / w,
                                  (1.0 - alpha_) / alpha_);
        return cms_scale_ * x;
    }

  private:
    double alpha_, k_, dt_;
    double normal_scale_ = 0.0, cauchy_scale_ = 0.0, drift_ = 0.0;
    double theta0_ = 0.0, cms_scale_ = 0.0;
    mutable std::normal_distribution<double> normal_{0.0, 1.0};
    mutable std::uniform_real_distribution<double> uniform_angle_{
        -pi / 2.0 + 1e-12, pi / 2.0 - 1e-12};
    mutable std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace detail

inline McSummary mc_sup(const StableParams& p, double t, std::size_t n_paths,
                        std::size_t n_steps, std::uint64_t seed,
                        const std::vector<double>& xis = {1.0},
                        const std::vector<double>& thresholds = {}) {
    detail::require_rho_interior(p, "mc_sup");
    if (!(t > 0.0)) throw DomainViolationError("mc_sup: t must be positive");
    if (n_steps < 4 || (n_steps & (n_steps - 1)) != 0)
        throw InvalidSpecError("mc_sup: n_steps must be a power of two >= 4");
    if (n_paths == 0) throw InvalidSpecError("mc_sup: need at least one path");

    const double dt = t / static_cast<double>(n_steps);
    const detail::StableIncrementSampler draw(p, dt);
    const double richardson = 1.0 / (std::pow(2.0, 1.0 / p.alpha) - 1.0);

    std::vector<double> sum(xis.size(), 0.0), sumsq(xis.size(), 0.0);
    std::vector<double> hits(thresholds.size(), 0.0);

    for (std::size_t path = 0; path < n_paths; ++path) {
        std::mt19937_64 rng(detail::splitmix64(seed ^ (path + 1)));
        double pos = 0.0;
        double sup_fine = 0.0, sup_coarse = 0.0;
        for (std::size_t step = 0; step < n_steps; ++step) {
            pos += draw(rng);
            sup_fine = std::max(sup_fine, pos);
            if (step % 2 == 1) sup_coarse = std::max(sup_coarse, pos);
        }
        const double sup = sup_fine + (sup_fine - sup_coarse) * richardson;
        for (std::size_t j = 0; j < xis.size(); ++j) {
            const double y = std::exp(-xis[j] * sup);
            sum[j] += y;
            sumsq[j] += y * y;
        }
        for (std::size_t j = 0; j < thresholds.size(); ++j)
            if (sup <= thresholds[j]) hits[j] += 1.0;
    }

    McSummary out;
    out.n_paths = n_paths;
    out.n_steps = n_steps;
    const double n = static_cast<double>(n_paths);
    for (std::size_t j = 0; j < xis.size(); ++j) {
        McEstimate e;
        e.xi = xis[j];
        e.value = sum[j] / n;
        const double var = std::max(0.0, sumsq[j] / n - e.value * e.value);
        e.std_err = std::sqrt(var / n);
        out.estimates.push_back(e);
    }
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        McProbability q;
        q.x = thresholds[j];
        q.value = hits[j] / n;
        q.std_err = std::sqrt(std::max(0.0, q.value * (1.0 - q.value)) / n);
        out.probabilities.push_back(q);
    }
    return out;
}

}  // namespace rogers
