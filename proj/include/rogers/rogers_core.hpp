#pragma once

// Core abstraction for Rogers functions: holomorphic functions f on the
// right half-plane C_> with Re(f(xi)/xi) >= 0, extended to the left
// half-plane by f(xi) = conj(f(-conj(xi))).  Provides evaluation,
// classification, grid-based property checks, structure-preserving
// transforms, the difference quotient f_[zeta], and boundary phases.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <rogers/quad.hpp>

namespace rogers {

struct RogersError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ImaginaryAxisError : RogersError {
    using RogersError::RogersError;
};
struct ZeroFunctionError : RogersError {
    using RogersError::RogersError;
};
struct DomainViolationError : RogersError {
    using RogersError::RogersError;
};
struct NotRealValueError : RogersError {
    using RogersError::RogersError;
};
struct InconclusiveError : RogersError {
    using RogersError::RogersError;
};
struct NonConvergentError : RogersError {
    using RogersError::RogersError;
};
struct InvalidSpecError : RogersError {
    using RogersError::RogersError;
};
struct OutOfRangeError : RogersError {
    using RogersError::RogersError;
};
struct AlphaOneSkewedError : RogersError {
    using RogersError::RogersError;
};
struct NotBalancedError : RogersError {
    using RogersError::RogersError;
};
struct TauOnCutError : RogersError {
    using RogersError::RogersError;
};
struct NotOnCurveError : RogersError {
    using RogersError::RogersError;
};
struct RhoDegenerateError : RogersError {
    using RogersError::RogersError;
};
struct GammaPoleError : RogersError {
    using RogersError::RogersError;
};
struct RootNotBracketedError : RogersError {
    using RogersError::RogersError;
};

// Closed-form knowledge attached by the catalog: the curve of real values,
// normalised Wiener-Hopf factors and kappa functions, where a family admits
// them.  Stored as callables; all fields optional.
struct ClosedFormData {
    std::function<complex(double)> zeta;          // r -> zeta_f(r)
    std::function<complex(double)> zeta_prime;    // r -> zeta_f'(r)
    std::function<double(double)> lambda;         // r -> lambda_f(r)
    std::function<double(double)> lambda_prime;   // r -> lambda_f'(r)
    std::function<complex(complex)> wh_up;        // normalised f_up
    std::function<complex(complex)> wh_down;      // normalised f_down
    std::function<complex(complex, complex)> kappa_up;    // (tau, xi)
    std::function<complex(complex, complex)> kappa_down;  // (tau, xi)
    std::optional<bool> balanced;
};

struct RogersFunction {
    // Defined on the closed right half-plane (minus axis singularities);
    // callers reach the left half-plane through evaluate().
    std::function<complex(complex)> evaluator;
    std::function<complex(complex)> derivative_evaluator;  // optional
    std::string label;
    std::shared_ptr<const ClosedFormData> closed_form;     // optional
};

// Evaluate f anywhere off the imaginary axis; on-axis points are taken as
// limits from the right when allow_axis_limit is set, and rejected otherwise.
inline complex evaluate(const RogersFunction& f, complex xi,
                        bool allow_axis_limit = false) {
    if (xi.real() > 0.0) return f.evaluator(xi);
    if (xi.real() < 0.0) return std::conj(f.evaluator(-std::conj(xi)));
    if (!allow_axis_limit)
        throw ImaginaryAxisError("evaluate: " + f.label +
                                 " sampled on the imaginary axis with no declared side");
    return f.evaluator(xi);
}

// Derivative of f: analytic when supplied, otherwise a central finite
// difference with step 1e-6*max(|xi|,1), stepping parallel to the imaginary
// axis when xi is too close to it for a horizontal stencil.
inline complex fprime(const RogersFunction& f, complex xi) {
    if (f.derivative_evaluator) {
        if (xi.real() >= 0.0) return f.derivative_evaluator(xi);
        return std::conj(f.derivative_evaluator(-std::conj(xi)));
    }
    const double h = 1e-6 * std::max(std::abs(xi), 1.0);
    if (std::abs(xi.real()) > 2.0 * h) {
        return (evaluate(f, xi + h) - evaluate(f, xi - h)) / (2.0 * h);
    }
    const complex ih(0.0, h);
    return (evaluate(f, xi + ih, true) - evaluate(f, xi - ih, true)) / (2.0 * ih);
}

struct Classification {
    bool is_zero = false;
    bool is_degenerate = false;  // f(xi) = -c1*i*xi
    bool is_bounded = false;
    complex f_at_zero{0.0};
    complex f_at_infinity{std::numeric_limits<double>::infinity(), 0.0};
};

struct GridCheckReport {
    std::size_t n_points = 0;
    double max_violation = 0.0;
    complex worst_point{0.0};
    bool passed = false;
};

// Standard 200-point log-polar probe grid in the open right half-plane.
inline std::vector<complex> log_polar_grid(double r_min = 1e-3, double r_max = 1e3,
                                           int n_r = 20, int n_theta = 10,
                                           double max_abs_theta = pi / 2 - 1e-3) {
    std::vector<complex> grid;
    grid.reserve(static_cast<std::size_t>(n_r) * n_theta);
    for (int i = 0; i < n_r; ++i) {
        const double r =
            r_min * std::pow(r_max / r_min, n_r == 1 ? 0.5 : double(i) / (n_r - 1));
        for (int j = 0; j < n_theta; ++j) {
            const double th =
                -max_abs_theta + 2.0 * max_abs_theta * (j + 0.5) / n_theta;
            grid.push_back(std::polar(r, th));
        }
    }
    return grid;
}

// Check Re(f(xi)/xi) >= -tol over a grid in the open right half-plane.
inline GridCheckReport check_rogers(const RogersFunction& f,
                                    const std::vector<complex>& grid,
                                    double tol = 1e-9) {
    GridCheckReport rep;
    rep.n_points = grid.size();
    for (const complex& xi : grid) {
        const double v = std::max(0.0, -(evaluate(f, xi) / xi).real());
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst_point = xi;
        }
    }
    rep.passed = rep.max_violation <= tol;
    return rep;
}

// Check the complete Bernstein property of g on a sampled grid: Im g >= 0 on
// the upper half-plane, g real and nonnegative on (0, infinity).
inline GridCheckReport check_cbf(const std::function<complex(complex)>& g,
                                 const std::vector<complex>& grid,
                                 double tol = 1e-9) {
    GridCheckReport rep;
    rep.n_points = grid.size();
    for (const complex& xi : grid) {
        double v = 0.0;
        const complex gv = g(xi);
        if (xi.imag() > 0.0) {
            v = std::max(0.0, -gv.imag());
        } else if (xi.imag() == 0.0 && xi.real() > 0.0) {
            v = std::max(std::abs(gv.imag()) / std::max(1.0, std::abs(gv)),
                         std::max(0.0, -gv.real()));
        }
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst_point = xi;
        }
    }
    rep.passed = rep.max_violation <= tol;
    return rep;
}

// Decide zero / degenerate (pure drift) / bounded, and the boundary values
// c0 = f(0+) and f(inf-), by extrapolation over geometric probe ladders.
inline Classification classify(const RogersFunction& f,
                               const std::vector<double>& probe_scales = {
                                   1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3}) {
    Classification cl;
    double max_abs = 0.0;
    double num = 0.0, den = 0.0, resid_scale = 0.0;
    std::vector<complex> probes;
    for (double r : probe_scales) {
        const complex v = f.evaluator(complex(r, 0.0));
        probes.push_back(v);
        max_abs = std::max(max_abs, std::abs(v));
        // least-squares fit of f(xi) ~ -c1*i*xi over the ladder
        num += (v * complex(0.0, 1.0) * r).real();  // Re(f * conj(-i xi)) = Re(f*(i r))
        den += r * r;
        resid_scale = std::max(resid_scale, std::abs(v));
    }
    if (max_abs < 1e-14) {
        cl.is_zero = true;
        return cl;
    }
    const double c1 = num / den;
    double resid = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i)
        resid = std::max(resid,
                         std::abs(probes[i] + complex(0.0, c1) * probe_scales[i]));
    cl.is_degenerate = resid <= 1e-10 * std::max(1.0, resid_scale);

    std::vector<std::pair<double, complex>> lo;
    for (double r : {1e-4, 1e-5, 1e-6, 1e-7})
        lo.emplace_back(r, f.evaluator(complex(r, 0.0)));
    cl.f_at_zero = extrapolate_limit(lo);

    const complex fa = f.evaluator(complex(1e6, 0.0));
    const complex fb = f.evaluator(complex(1e7, 0.0));
    if (std::abs(fb - fa) <= 1e-2 * (1.0 + std::abs(fb))) {
        cl.is_bounded = true;
        std::vector<std::pair<double, complex>> hi;
        for (double r : {1e4, 1e5, 1e6, 1e7})
            hi.emplace_back(1.0 / r, f.evaluator(complex(r, 0.0)));
        cl.f_at_infinity = extrapolate_limit(hi);
    }
    return cl;
}

enum class TransformKind {
    InvReflect,         // xi^2 / f(xi)
    RecipInv,           // 1 / f(1/xi)
    SquareInv,          // xi^2 f(1/xi)
    PowerSandwich,      // xi^{1-alpha} f(xi^alpha)
    ComposeCBF,         // g(f(xi)) for a complete Bernstein function g
    BoundedComplement,  // c - f(1/xi), f bounded with c >= f(inf-)
    Translate,          // f(xi + zeta0)
    Mobius              // f(u(xi)) with the curve-endpoint Mobius map u
};

struct TransformParams {
    double alpha = 0.5;                       // PowerSandwich
    double c = 0.0;                           // BoundedComplement
    std::function<complex(complex)> g;        // ComposeCBF
    complex zeta0{0.0, 0.0};                  // Translate / Mobius
    complex zeta_inf{std::numeric_limits<double>::infinity(), 0.0};  // Mobius
};

// Mobius map u sending (0, infinity) to the curve chord between the axis
// endpoints zeta0 and zeta_inf; u(xi) = zeta0 + d*xi/(xi + d), d = zeta_inf
// - zeta0, degenerating to the translation xi + zeta0 when zeta_inf = inf.
inline complex mobius_map(complex xi, complex zeta0, complex zeta_inf) {
    if (std::isinf(zeta_inf.real()) || std::isinf(zeta_inf.imag()))
        return xi + zeta0;
    const complex d = zeta_inf - zeta0;
    return zeta0 + d * xi / (xi + d);
}

inline RogersFunction transform(const RogersFunction& f, TransformKind kind,
                                const TransformParams& params = {}) {
    RogersFunction out;
    out.label = f.label;
    switch (kind) {
        case TransformKind::InvReflect:
            out.label += "|inv_reflect";
            out.evaluator = [f](complex xi) {
                const complex v = evaluate(f, xi, true);
                if (v == complex(0.0)) throw ZeroFunctionError("InvReflect: f vanishes");
                return xi * xi / v;
            };
            break;
        case TransformKind::RecipInv:
            out.label += "|recip_inv";
            out.evaluator = [f](complex xi) {
                const complex v = evaluate(f, 1.0 / xi, true);
                if (v == complex(0.0)) throw ZeroFunctionError("RecipInv: f vanishes");
                return 1.0 / v;
            };
            break;
        case TransformKind::SquareInv:
            out.label += "|square_inv";
            out.evaluator = [f](complex xi) { return xi * xi * evaluate(f, 1.0 / xi, true); };
            break;
        case TransformKind::PowerSandwich: {
            const double a = params.alpha;
            if (a < -1.0 || a > 1.0)
                throw DomainViolationError("PowerSandwich: alpha outside [-1, 1]");
            out.label += "|power_sandwich";
            out.evaluator = [f, a](complex xi) {
                return std::pow(xi, 1.0 - a) * evaluate(f, std::pow(xi, a), true);
            };
            break;
        }
        case TransformKind::ComposeCBF: {
            if (!params.g) throw DomainViolationError("ComposeCBF: missing g");
            auto g = params.g;
            out.label += "|compose_cbf";
            out.evaluator = [f, g](complex xi) { return g(evaluate(f, xi, true)); };
            break;
        }
        case TransformKind::BoundedComplement: {
            const double c = params.c;
            out.label += "|bounded_complement";
            out.evaluator = [f, c](complex xi) {
                return complex(c) - evaluate(f, 1.0 / xi, true);
            };
            break;
        }
        case TransformKind::Translate: {
            const complex z0 = params.zeta0;
            out.label += "|translate";
            out.evaluator = [f, z0](complex xi) { return evaluate(f, xi + z0, true); };
            if (f.derivative_evaluator) {
                out.derivative_evaluator = [f, z0](complex xi) {
                    return fprime(f, xi + z0);
                };
            }
            break;
        }
        case TransformKind::Mobius: {
            const complex z0 = params.zeta0, zi = params.zeta_inf;
            out.label += "|mobius";
            out.evaluator = [f, z0, zi](complex xi) {
                return evaluate(f, mobius_map(xi, z0, zi), true);
            };
            break;
        }
    }
    return out;
}

// The difference quotient f_[zeta](xi) = (xi - zeta)(xi + conj zeta) /
// (f(xi) - f(zeta)) for zeta with f(zeta) in (0, infinity), extended across
// the removable singularity at xi = zeta by the derivative of f near there
// (exactly 2 Re zeta / f'(zeta) at xi = zeta).
inline RogersFunction difference_quotient(const RogersFunction& f, complex zeta,
                                          double tol = 1e-6) {
    const complex fz = evaluate(f, zeta, true);
    if (std::abs(fz.imag()) > tol * std::max(1.0, std::abs(fz)) || fz.real() <= 0.0)
        throw NotRealValueError("difference_quotient: f(zeta) not in (0, inf) for " +
                                f.label);
    const double fzeta = fz.real();
    const double radius = 1e-4 * std::abs(zeta);
    RogersFunction out;
    out.label = f.label + "|quotient";
    out.evaluator = [f, zeta, fzeta, radius](complex xi) {
        if (std::abs(xi - zeta) < radius) {
            // first-order-accurate fill across the removable singularity
            return (xi + std::conj(zeta)) / fprime(f, 0.5 * (xi + zeta));
        }
        const complex d = evaluate(f, xi, true) - fzeta;
        if (d == complex(0.0))
            throw ZeroFunctionError("difference_quotient: vanishing denominator");
        return (xi - zeta) * (xi + std::conj(zeta)) / d;
    };
    return out;
}

// Boundary phase phi(s) = -sign(s) * lim_{t->0} Arg f(t - is), extrapolated
// over the t-ladder and clamped to [0, pi]; pre-clamp excess reported.
inline double boundary_phase(const RogersFunction& f, double s,
                             const std::vector<double>& t_ladder = {1e-2, 1e-3, 1e-4,
                                                                    1e-5},
                             double* excess = nullptr) {
    if (s == 0.0) throw DomainViolationError("boundary_phase: s must be nonzero");
    std::vector<complex> vals;
    for (double t : t_ladder) vals.push_back(f.evaluator(complex(t, -s)));
    const auto logs = continuous_log_samples(vals);
    std::vector<std::pair<double, complex>> seq;
    for (std::size_t i = 0; i < logs.size(); ++i)
        seq.emplace_back(t_ladder[i], complex(logs[i].imag(), 0.0));
    double err = 0.0;
    double phi = -(s > 0 ? 1.0 : -1.0) * extrapolate_limit(seq, &err).real();
    if (err > 1e-3)
        throw InconclusiveError("boundary_phase: extrapolation ladder oscillates");
    const double clamped = std::clamp(phi, 0.0, pi);
    if (excess) *excess = std::abs(phi - clamped);
    return clamped;
}

// |xi f'(xi)/f(xi)| <= 4(1 + sqrt 2) at real xi.
inline GridCheckReport derivative_bound_check(const RogersFunction& f,
                                              const std::vector<double>& grid,
                                              double tol = 1e-6) {
    GridCheckReport rep;
    rep.n_points = grid.size();
    const double bound = 4.0 * (1.0 + std::sqrt(2.0));
    for (double r : grid) {
        const complex xi(r, 0.0);
        const complex v = f.evaluator(xi);
        if (v == complex(0.0)) throw ZeroFunctionError("derivative_bound_check");
        const double ratio = std::abs(xi * fprime(f, xi) / v);
        const double viol = std::max(0.0, ratio - bound);
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.worst_point = xi;
        }
    }
    rep.passed = rep.max_violation <= tol;
    return rep;
}

}  // namespace rogers
