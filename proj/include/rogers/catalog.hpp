#pragma once

// Concrete Rogers-function families: Brownian motion with drift, strictly
// stable processes (in all four standard parametrisations), stable with
// drift, pure drift, the classical risk process, nonnegative sums, and
// transformed functions.  Families carry closed-form curve and factor data
// used downstream as oracles.

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <rogers/rogers_core.hpp>

namespace rogers {

// Fully populated parametrisation of a strictly stable process with
// Lévy-Khintchine exponent f(xi) = a xi^alpha on (0, infinity):
//   a = k^alpha (1 - i tan((2 rho - 1) alpha pi / 2)),
//   rho = 1/2 - Arg(a) / (alpha pi),
//   beta = -tan(Arg a) / tan(alpha pi / 2)      (alpha != 1),
//   a = e^{-i alpha pi/2} c_up + e^{i alpha pi/2} c_down    (alpha < 1;
//       both exponentials shifted by +-pi for alpha > 1),
//   theta = -(1/alpha) Arg a  (angle of the curve of real values),
//   c_abs = |a|.
struct StableParams {
    double alpha = 2.0;
    double rho = 0.5;
    double beta = 0.0;
    double k = 1.0;
    complex a{1.0, 0.0};
    double c_up = 0.0;
    double c_down = 0.0;
    double theta = 0.0;
    double c_abs = 1.0;
};

namespace detail {

inline void stable_validate(const StableParams& p) {
    if (!(p.alpha > 0.0) || p.alpha > 2.0)
        throw OutOfRangeError("stable: alpha outside (0, 2]");
    const double arg_a = std::arg(p.a);
    const double lim = std::min(p.alpha, 2.0 - p.alpha) * pi / 2.0 + 1e-12;
    if (std::abs(arg_a) > lim)
        throw OutOfRangeError("stable: |Arg a| exceeds min(alpha, 2-alpha)*pi/2");
    if (p.alpha <= 1.0) {
        if (p.rho < -1e-12 || p.rho > 1.0 + 1e-12)
            throw OutOfRangeError("stable: rho outside [0, 1]");
    } else {
        if (p.rho < 1.0 - 1.0 / p.alpha - 1e-12 || p.rho > 1.0 / p.alpha + 1e-12)
            throw OutOfRangeError("stable: rho outside [1 - 1/alpha, 1/alpha]");
    }
    if (!(p.k > 0.0)) throw OutOfRangeError("stable: k must be positive");
}

// Fill the derived fields (a, beta, theta, c_up/c_down, c_abs) from
// (alpha, rho, k), which is the internal canonical triple.
inline StableParams stable_fill(double alpha, double rho, double k) {
    StableParams p;
    p.alpha = alpha;
    p.rho = rho;
    p.k = k;
    const double phase = (2.0 * rho - 1.0) * alpha * pi / 2.0;
    p.a = std::pow(k, alpha) * complex(1.0, -std::tan(phase));
    p.c_abs = std::abs(p.a);
    p.theta = -std::arg(p.a) / alpha;
    if (alpha != 1.0) {
        p.beta = -std::tan(std::arg(p.a)) / std::tan(alpha * pi / 2.0);
        if (std::abs(p.beta) < 1e-15) p.beta = 0.0;
    } else {
        p.beta = 0.0;
    }
    if (alpha == 2.0) {
        p.c_up = p.c_down = 0.0;  // no jumps
    } else if (alpha == 1.0) {
        p.c_up = p.c_down = p.a.real() / pi;
    } else {
        const double phi = alpha * pi / 2.0;
        const double sgn = alpha < 1.0 ? 1.0 : -1.0;
        const double sum = sgn * p.a.real() / std::cos(phi);
        const double diff = sgn * p.a.imag() / std::sin(phi);  // c_down - c_up
        p.c_up = 0.5 * (sum - diff);
        p.c_down = 0.5 * (sum + diff);
        if (std::abs(p.c_up) < 1e-15) p.c_up = 0.0;
        if (std::abs(p.c_down) < 1e-15) p.c_down = 0.0;
    }
    stable_validate(p);
    return p;
}

}  // namespace detail

inline StableParams stable_from_rho(double alpha, double rho, double k = 1.0) {
    return detail::stable_fill(alpha, rho, k);
}

inline StableParams stable_from_beta(double alpha, double beta, double k = 1.0) {
    if (std::abs(beta) > 1.0) throw OutOfRangeError("stable: |beta| > 1");
    if (alpha == 1.0) {
        if (beta != 0.0)
            throw AlphaOneSkewedError(
                "stable: alpha = 1 with nonzero beta needs a different parametrisation");
        return detail::stable_fill(1.0, 0.5, k);
    }
    const double rho =
        0.5 + std::atan(beta * std::tan(alpha * pi / 2.0)) / (alpha * pi);
    return detail::stable_fill(alpha, rho, k);
}

inline StableParams stable_from_a(double alpha, complex a) {
    if (!(std::abs(a) > 0.0)) throw OutOfRangeError("stable: a must be nonzero");
    const double rho = 0.5 - std::arg(a) / (alpha * pi);
    const double k = std::pow(std::abs(a.real()), 1.0 / alpha);
    StableParams p = detail::stable_fill(alpha, rho, k);
    p.a = a;  // keep the exact coefficient rather than the reconstruction
    p.c_abs = std::abs(a);
    return p;
}

inline StableParams stable_from_jumps(double alpha, double c_up, double c_down) {
    if (c_up < 0.0 || c_down < 0.0)
        throw OutOfRangeError("stable: jump weights must be nonnegative");
    if (c_up + c_down == 0.0) throw OutOfRangeError("stable: zero jump measure");
    complex a;
    if (alpha == 1.0) {
        if (std::abs(c_up - c_down) > 1e-14 * (c_up + c_down))
            throw AlphaOneSkewedError("stable: alpha = 1 requires c_up = c_down");
        a = complex(pi * c_up, 0.0);
    } else if (alpha == 2.0) {
        throw OutOfRangeError("stable: alpha = 2 has no jump parametrisation");
    } else {
        const double phi = alpha * pi / 2.0;
        const double sgn = alpha < 1.0 ? 1.0 : -1.0;
        a = sgn * (c_up * std::exp(complex(0.0, -phi)) +
                   c_down * std::exp(complex(0.0, phi)));
    }
    StableParams p = stable_from_a(alpha, a);
    p.c_up = c_up;
    p.c_down = c_down;
    return p;
}

// --- FunctionSpec -----------------------------------------------------------

enum class Family {
    BrownianDrift,
    Stable,
    StableWithDrift,
    Drift,
    RiskProcess,
    Sum,
    Transformed
};

struct FunctionSpec {
    Family family = Family::BrownianDrift;
    double b = 0.0;                 // BrownianDrift / StableWithDrift / Drift
    double a = 0.0;                 // RiskProcess
    StableParams stable;            // Stable / StableWithDrift
    struct Term {
        double weight = 1.0;
        std::shared_ptr<const FunctionSpec> spec;
    };
    std::vector<Term> terms;        // Sum
    TransformKind transform_kind = TransformKind::InvReflect;  // Transformed
    TransformParams transform_params;                          // Transformed
    std::shared_ptr<const FunctionSpec> inner;                 // Transformed
    std::string label;
};

inline RogersFunction make(const FunctionSpec& spec, int depth = 0);

namespace detail {

inline RogersFunction make_brownian(double b) {
    RogersFunction f;
    f.label = "brownian_drift(b=" + std::to_string(b) + ")";
    f.evaluator = [b](complex xi) {
        return 0.5 * xi * xi - complex(0.0, b) * xi;
    };
    f.derivative_evaluator = [b](complex xi) { return xi - complex(0.0, b); };
    auto cf = std::make_shared<ClosedFormData>();
    const double B = std::abs(b);
    cf->zeta = [b, B](double r) {
        if (r >= B) return complex(std::sqrt(r * r - b * b), b);
        return complex(0.0, b >= 0.0 ? r : -r);
    };
    cf->zeta_prime = [b, B](double r) {
        if (r > B) return complex(r / std::sqrt(r * r - b * b), 0.0);
        return complex(0.0, b >= 0.0 ? 1.0 : -1.0);
    };
    cf->lambda = [B](double r) {
        return r >= B ? 0.5 * r * r : B * r - 0.5 * r * r;
    };
    cf->lambda_prime = [B](double r) { return r >= B ? r : B - r; };
    cf->wh_up = [B, b](complex xi) {
        if (b >= 0.0) return std::sqrt((1.0 + 2.0 * B) / 2.0) * xi;
        return (xi + 2.0 * B) / std::sqrt(2.0 * (1.0 + 2.0 * B));
    };
    cf->wh_down = [B, b](complex xi) {
        if (b >= 0.0) return (xi + 2.0 * B) / std::sqrt(2.0 * (1.0 + 2.0 * B));
        return std::sqrt((1.0 + 2.0 * B) / 2.0) * xi;
    };
    cf->kappa_up = [b](complex tau, complex xi) {
        const double s = std::sqrt(b * b + 2.0);
        const double pref = std::sqrt((1.0 + s + b) / (2.0 * (1.0 + s - b)));
        return pref * (xi + std::sqrt(b * b + 2.0 * tau) - b);
    };
    cf->kappa_down = [b](complex tau, complex xi) {
        const double s = std::sqrt(b * b + 2.0);
        const double pref = std::sqrt((1.0 + s - b) / (2.0 * (1.0 + s + b)));
        return pref * (xi + std::sqrt(b * b + 2.0 * tau) + b);
    };
    cf->balanced = (b == 0.0);
    f.closed_form = cf;
    return f;
}

inline RogersFunction make_stable(const StableParams& p) {
    stable_validate(p);
    RogersFunction f;
    f.label = "stable(alpha=" + std::to_string(p.alpha) +
              ",rho=" + std::to_string(p.rho) + ",k=" + std::to_string(p.k) + ")";
    const complex a = p.a;
    const double al = p.alpha;
    f.evaluator = [a, al](complex xi) { return a * std::pow(xi, al); };
    f.derivative_evaluator = [a, al](complex xi) {
        return a * al * std::pow(xi, al - 1.0);
    };
    auto cf = std::make_shared<ClosedFormData>();
    const double theta = p.theta, c = p.c_abs, rho = p.rho;
    cf->zeta = [theta](double r) { return std::polar(r, theta); };
    cf->zeta_prime = [theta](double) { return std::polar(1.0, theta); };
    cf->lambda = [c, al](double r) { return c * std::pow(r, al); };
    cf->lambda_prime = [c, al](double r) { return c * al * std::pow(r, al - 1.0); };
    cf->wh_up = [c, al, rho](complex xi) {
        return std::sqrt(c) * std::pow(xi, rho * al);
    };
    cf->wh_down = [c, al, rho](complex xi) {
        return std::sqrt(c) * std::pow(xi, (1.0 - rho) * al);
    };
    cf->balanced = std::abs(std::arg(a)) < al * pi / 2.0 - 1e-12;
    f.closed_form = cf;
    return f;
}

inline RogersFunction make_risk(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw InvalidSpecError("risk_process: a and b must be positive");
    RogersFunction f;
    f.label = "risk_process(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")";
    f.evaluator = [a, b](complex xi) {
        return xi / (xi - complex(0.0, a)) - complex(0.0, b) * xi;
    };
    f.derivative_evaluator = [a, b](complex xi) {
        const complex d = xi - complex(0.0, a);
        return -complex(0.0, a) / (d * d) - complex(0.0, b);
    };
    if (a == 4.0 && b == 1.0) {
        // The curve of real values is the circle |xi - 4i| = 2 between the
        // axis endpoints 2i and 6i, plus the axis segments below and above.
        auto cf = std::make_shared<ClosedFormData>();
        cf->zeta = [](double r) {
            if (r > 2.0 && r < 6.0) {
                const double y = (r * r + 12.0) / 8.0;
                return complex(std::sqrt(std::max(0.0, r * r - y * y)), y);
            }
            return complex(0.0, r);
        };
        cf->lambda = [](double r) {
            if (r > 2.0 && r < 6.0) {
                // f(zeta(r)) is real there; evaluate through the formula
                const double y = (r * r + 12.0) / 8.0;
                const complex z(std::sqrt(std::max(0.0, r * r - y * y)), y);
                return (z / (z - complex(0.0, 4.0)) - complex(0.0, 1.0) * z).real();
            }
            return r / (r - 4.0) + r;
        };
        cf->wh_up = [](complex xi) { return 2.0 / std::sqrt(5.0) * xi; };
        cf->wh_down = [](complex xi) {
            return std::sqrt(5.0) / 2.0 * (xi + 3.0) / (xi + 4.0);
        };
        cf->kappa_up = [](complex tau, complex xi) {
            const complex h =
                0.5 * (std::sqrt(tau + 1.0) * std::sqrt(tau + 9.0) + tau - 3.0);
            return (xi + h) / std::sqrt(5.0);
        };
        cf->kappa_down = [](complex tau, complex xi) {
            const complex h =
                0.5 * (std::sqrt(tau + 1.0) * std::sqrt(tau + 9.0) - tau + 3.0);
            return std::sqrt(5.0) * (xi + h) / (xi + 4.0);
        };
        cf->balanced = false;
        f.closed_form = cf;
    }
    return f;
}

}  // namespace detail

inline RogersFunction make(const FunctionSpec& spec, int depth) {
    if (depth > 8) throw InvalidSpecError("make: nesting depth exceeds 8");
    RogersFunction f;
    switch (spec.family) {
        case Family::BrownianDrift:
            f = detail::make_brownian(spec.b);
            break;
        case Family::Stable:
            f = detail::make_stable(spec.stable);
            break;
        case Family::StableWithDrift: {
            detail::stable_validate(spec.stable);
            const complex a = spec.stable.a;
            const double al = spec.stable.alpha, b = spec.b;
            f.label = "stable_drift(alpha=" + std::to_string(al) +
                      ",b=" + std::to_string(b) + ")";
            f.evaluator = [a, al, b](complex xi) {
                return a * std::pow(xi, al) - complex(0.0, b) * xi;
            };
            f.derivative_evaluator = [a, al, b](complex xi) {
                return a * al * std::pow(xi, al - 1.0) - complex(0.0, b);
            };
            break;
        }
        case Family::Drift: {
            const double b = spec.b;
            f.label = "drift(b=" + std::to_string(b) + ")";
            f.evaluator = [b](complex xi) { return -complex(0.0, b) * xi; };
            f.derivative_evaluator = [b](complex) { return -complex(0.0, b); };
            break;
        }
        case Family::RiskProcess:
            f = detail::make_risk(spec.a, spec.b);
            break;
        case Family::Sum: {
            if (spec.terms.empty()) throw InvalidSpecError("sum: no terms");
            std::vector<std::pair<double, RogersFunction>> parts;
            for (const auto& t : spec.terms) {
                if (t.weight < 0.0) throw InvalidSpecError("sum: negative weight");
                if (!t.spec) throw InvalidSpecError("sum: missing term spec");
                parts.emplace_back(t.weight, make(*t.spec, depth + 1));
            }
            f.label = "sum";
            f.evaluator = [parts](complex xi) {
                complex v(0.0);
                for (const auto& [w, g] : parts) v += w * g.evaluator(xi);
                return v;
            };
            bool all_deriv = true;
            for (const auto& [w, g] : parts) all_deriv &= bool(g.derivative_evaluator);
            if (all_deriv) {
                f.derivative_evaluator = [parts](complex xi) {
                    complex v(0.0);
                    for (const auto& [w, g] : parts) v += w * g.derivative_evaluator(xi);
                    return v;
                };
            }
            break;
        }
        case Family::Transformed: {
            if (!spec.inner) throw InvalidSpecError("transform: missing inner spec");
            f = transform(make(*spec.inner, depth + 1), spec.transform_kind,
                          spec.transform_params);
            break;
        }
    }
    if (!spec.label.empty()) f.label = spec.label;
    return f;
}

inline std::shared_ptr<const ClosedFormData> closed_forms(const RogersFunction& f) {
    return f.closed_form;
}

// Convenience constructors for the common cases.
inline RogersFunction make_brownian_drift(double b) {
    FunctionSpec s;
    s.family = Family::BrownianDrift;
    s.b = b;
    return make(s);
}
inline RogersFunction make_stable(const StableParams& p) {
    FunctionSpec s;
    s.family = Family::Stable;
    s.stable = p;
    return make(s);
}
inline RogersFunction make_risk_process(double a, double b) {
    FunctionSpec s;
    s.family = Family::RiskProcess;
    s.a = a;
    s.b = b;
    return make(s);
}

}  // namespace rogers
