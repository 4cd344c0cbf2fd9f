// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Each criterion exercises the public library API end to end and
// compares against independent closed forms at the stated tolerance.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <rogers/catalog.hpp>
#include <rogers/extended_wh.hpp>
#include <rogers/fluctuation.hpp>
#include <rogers/quad.hpp>
#include <rogers/real_curve.hpp>
#include <rogers/rogers_core.hpp>
#include <rogers/wiener_hopf.hpp>

namespace {

using rogers::complex;
using rogers::Side;

int g_failures = 0;

void report(int n, const std::string& what, bool ok, double worst,
            double elapsed_s) {
    std::printf("%s  criterion %2d: %-58s  worst %.3e  (%.1f s)\n",
                ok ? "PASS" : "FAIL", n, what.c_str(), worst, elapsed_s);
    if (!ok) ++g_failures;
}

template <typename Body>
void criterion(int n, const std::string& what, Body&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = false;
    try {
        ok = body(worst);
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
        ok = false;
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(n, what, ok, worst, dt);
}

double rel_err(complex got, complex want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace

int main() {
    using namespace rogers;

    // 1. Brownian motion with drift: numeric Wiener-Hopf factors against the
    //    linear/affine closed forms.
    criterion(1, "BM WH factors vs closed forms (rtol 1e-7)", [](double& worst) {
        for (double b : {0.0, 0.5, 1.0, -1.0}) {
            const RogersFunction f = make_brownian_drift(b);
            const auto cf = closed_forms(f);
            for (double xi : {0.25, 1.0, 4.0}) {
                worst = std::max(worst, rel_err(wh_factor(f, Side::Up, xi).value,
                                                cf->wh_up(complex(xi))));
                worst = std::max(worst, rel_err(wh_factor(f, Side::Down, xi).value,
                                                cf->wh_down(complex(xi))));
            }
        }
        return worst <= 1e-7;
    });

    // 2. Stable factor ratios are exact powers: up-ratio(xi, 1) = xi^(rho alpha).
    criterion(2, "stable wh_ratio power law (rtol 1e-7)", [](double& worst) {
        for (auto [alpha, rho] :
             {std::pair{0.7, 0.4}, std::pair{1.0, 0.5}, std::pair{1.5, 0.6}}) {
            const RogersFunction f = make_stable(stable_from_rho(alpha, rho));
            for (double xi : {0.1, 2.0, 50.0}) {
                worst = std::max(worst,
                                 rel_err(wh_ratio(f, Side::Up, xi, 1.0).value,
                                         std::pow(xi, rho * alpha)));
            }
        }
        return worst <= 1e-7;
    });

    // 3. BM extended factors: the single-integral evaluation reproduces
    //    kappa_up(tau; xi) = sqrt((1+s+b)/(2(1+s-b))) (xi + sqrt(b^2+2 tau) - b),
    //    s = sqrt(b^2 + 2).
    criterion(3, "BM kappa_up closed form (rtol 1e-6)", [](double& worst) {
        for (double b : {0.0, 1.0}) {
            const RogersFunction f = make_brownian_drift(b);
            const double s = std::sqrt(b * b + 2.0);
            const double pref = std::sqrt((1.0 + s + b) / (2.0 * (1.0 + s - b)));
            for (double tau : {0.5, 2.0, 10.0}) {
                for (double xi : {1.0, 3.0}) {
                    const double want =
                        pref * (xi + std::sqrt(b * b + 2.0 * tau) - b);
                    const complex got =
                        kappa_numeric(f, Side::Up, tau, xi).value;
                    worst = std::max(worst, rel_err(got, want));
                }
            }
        }
        return worst <= 1e-6;
    });

    // 4. Risk process (a=4, b=1): both extended factors match the published
    //    rational/algebraic forms, including the kappa_up(1; 1) = 1 anchor.
    criterion(4, "risk-process kappa closed forms (rtol 1e-6)", [](double& worst) {
        const RogersFunction f = make_risk_process(4.0, 1.0);
        auto h = [](double tau, double sign) {
            return 0.5 * (std::sqrt(tau + 1.0) * std::sqrt(tau + 9.0) +
                          sign * (tau - 3.0));
        };
        for (double tau : {0.5, 1.0, 4.0}) {
            for (double xi : {0.5, 1.0, 5.0}) {
                const double up_want = (xi + h(tau, 1.0)) / std::sqrt(5.0);
                const double dn_want =
                    std::sqrt(5.0) * (xi + h(tau, -1.0)) / (xi + 4.0);
                worst = std::max(
                    worst, rel_err(kappa(f, Side::Up, tau, xi).value, up_want));
                worst = std::max(
                    worst, rel_err(kappa(f, Side::Down, tau, xi).value, dn_want));
            }
        }
        const double anchor =
            std::abs(kappa(f, Side::Up, 1.0, 1.0).value - 1.0);
        worst = std::max(worst, anchor);
        return worst <= 1e-6 && anchor <= 1e-8;
    });

    // 5. Extended-factorisation integral identity evaluates to 1.
    criterion(5, "xwh integral identity = 1 (margin 1e-5)", [](double& worst) {
        const std::vector<RogersFunction> fs = {
            make_brownian_drift(0.0), make_stable(stable_from_rho(1.5, 0.6)),
            make_stable(stable_from_rho(1.0, 0.5)),
            make_stable(stable_from_rho(0.8, 0.45))};
        for (const RogersFunction& f : fs)
            worst = std::max(worst,
                             std::abs(xwh_integral_identity(f, 1.0, 2.0) - 1.0));
        return worst <= 1e-5;
    });

    // 6. alpha = 2 supremum transform reduces to the Gaussian formula
    //    exp(k^2 t xi^2) erfc(k xi sqrt(t)).
    criterion(6, "alpha=2 supremum transform vs erfc (1e-6)", [](double& worst) {
        const StableParams p = stable_from_rho(2.0, 0.5);
        for (double t : {0.5, 1.0, 2.0}) {
            for (double xi : {0.5, 1.0, 2.0}) {
                const double z = p.k * xi * std::sqrt(t);
                const double want = std::exp(z * z) * std::erfc(z);
                worst = std::max(
                    worst, std::abs(stable_sup_laplace(p, t, xi) - want));
            }
        }
        return worst <= 1e-6;
    });

    // 7. General curve-integral supremum transform agrees with the stable
    //    specialisation.
    criterion(7, "extreme_laplace vs stable closed form (1e-4)", [](double& worst) {
        for (auto [alpha, rho] : {std::pair{1.5, 0.6}, std::pair{1.0, 0.5}}) {
            const StableParams p = stable_from_rho(alpha, rho);
            const RogersFunction f = make_stable(p);
            for (double t : {1.0, 2.0}) {
                for (double xi : {0.5, 2.0}) {
                    SupremumQuery q;
                    q.t = t;
                    q.xi = xi;
                    q.side = Side::Up;
                    worst = std::max(worst,
                                     std::abs(extreme_laplace(f, q) -
                                              stable_sup_laplace(p, t, xi)));
                }
            }
        }
        return worst <= 1e-4;
    });

    // 8. Time-Laplace quadrature of the supremum transform equals the kappa
    //    ratio kappa(sigma; 0+)/kappa(sigma; xi).
    criterion(8, "resolvent identity via kappa ratio (1e-4)", [](double& worst) {
        const RogersFunction f = make_stable(stable_from_rho(1.5, 0.6));
        for (double xi : {1.0, 4.0}) {
            const SupLaplaceEvaluator ev(f, Side::Up, xi, 1e-3);
            for (double sigma : {1.0, 3.0}) {
                const double lhs = ev.resolvent(sigma);
                const double rhs =
                    extreme_laplace_resolvent(f, Side::Up, sigma, xi);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        return worst <= 1e-4;
    });

    // 9. Eigenfunction phase: theta_up(r) = (1-rho)(1-alpha rho) pi/2,
    //    independent of r.
    criterion(9, "stable eigenphase closed form (1e-5)", [](double& worst) {
        for (auto [alpha, rho] :
             {std::pair{0.6, 0.3}, std::pair{1.2, 0.5}, std::pair{1.8, 0.55}}) {
            const RogersFunction f = make_stable(stable_from_rho(alpha, rho));
            const double want = (1.0 - rho) * (1.0 - alpha * rho) * pi / 2.0;
            for (double r : {0.5, 1.0, 8.0}) {
                worst = std::max(worst,
                                 std::abs(theta(f, Side::Up, r).theta_up - want));
            }
        }
        return worst <= 1e-5;
    });

    // 10. Law-level checks: the alpha = 1 supremum density has unit mass, and
    //     the Monte Carlo oracle reproduces the analytic supremum laws.
    criterion(10, "density mass + Monte Carlo oracle (3 SE)", [](double& worst) {
        // unit mass of the Cauchy-family supremum density
        for (double rho : {0.3, 0.5, 0.7}) {
            const StableParams p = stable_from_rho(1.0, rho);
            double acc = 0.0;
            double px = 1e-6, pv = stable1_sup_density(p, 1.0, px);
            const int n = 1400;
            for (int i = 1; i <= n; ++i) {
                const double x = 1e-6 * std::pow(1e13, double(i) / n);
                const double v = stable1_sup_density(p, 1.0, x);
                acc += 0.5 * (pv + v) * (x - px);
                px = x;
                pv = v;
            }
            worst = std::max(worst, std::abs(acc - 1.0));
            if (worst > 1e-3) return false;
        }

        // Brownian motion (f = xi^2/2): P(sup_1 <= 1) = 2 Phi(1) - 1
        const StableParams bm = stable_from_rho(2.0, 0.5, 1.0 / std::sqrt(2.0));
        const McSummary m1 = mc_sup(bm, 1.0, 100000, 8192, 20240817, {1.0}, {1.0});
        const double bm_target = std::erf(1.0 / std::sqrt(2.0));
        const double bm_dev = std::abs(m1.probabilities[0].value - bm_target) /
                              std::max(m1.probabilities[0].std_err, 1e-12);
        // and the Laplace functional against the erfc closed form
        const double bm_ana = stable_sup_laplace(bm, 1.0, 1.0);
        const double bm_dev2 = std::abs(m1.estimates[0].value - bm_ana) /
                               std::max(m1.estimates[0].std_err, 1e-12);

        // Cauchy process: Laplace functional against the analytic transform
        const StableParams ca = stable_from_rho(1.0, 0.5);
        const McSummary m2 = mc_sup(ca, 1.0, 100000, 4096, 20240817, {1.0});
        const double ca_ana = stable_sup_laplace(ca, 1.0, 1.0);
        const double ca_dev = std::abs(m2.estimates[0].value - ca_ana) /
                              std::max(m2.estimates[0].std_err, 1e-12);

        worst = std::max({worst, bm_dev, bm_dev2, ca_dev});
        return bm_dev <= 3.0 && bm_dev2 <= 3.0 && ca_dev <= 3.0;
    });

    // 11. Structural check: kappa sections and factor-ratio families are
    //     complete Bernstein functions; a phase-corrupted candidate is caught.
    criterion(11, "CBF property of kappa and ratio families", [](double& worst) {
        // probe grid: right half-plane fan plus exact positive-axis points
        std::vector<complex> grid = log_polar_grid(0.05, 20.0, 5, 6);
        for (double r : {0.05, 0.4, 1.0, 3.0, 20.0}) grid.push_back(complex(r, 0.0));

        bool ok = true;
        for (auto [alpha, rho] : {std::pair{1.5, 0.6}, std::pair{1.0, 0.5}}) {
            const RogersFunction f = make_stable(stable_from_rho(alpha, rho));
            const std::vector<std::function<complex(complex)>> cands = {
                [&](complex tau) { return kappa(f, Side::Up, tau, 1.0).value; },
                [&](complex xi) { return kappa(f, Side::Up, 2.0, xi).value; },
                [&](complex xi) { return wh_ratio(f, Side::Up, xi, 1.0).value; },
                [&](complex xi) { return wh_ratio(f, Side::Down, xi, 1.0).value; },
                [&](complex xi) {
                    return kappa(f, Side::Up, 2.0, xi).value /
                           kappa(f, Side::Up, 2.0, 1.0).value;
                },
                [&](complex xi) {
                    return kappa(f, Side::Down, 2.0, xi).value /
                           kappa(f, Side::Down, 2.0, 1.0).value;
                },
            };
            for (const auto& g : cands) {
                const GridCheckReport rep = check_cbf(g, grid, 1e-8);
                worst = std::max(worst, rep.max_violation);
                ok = ok && rep.passed;
            }
        }

        // corrupted candidate: f(xi) = xi^2 with a 1% phase perturbation must
        // be rejected by the same check
        const GridCheckReport bad = check_cbf(
            [](complex xi) { return xi * xi * std::polar(1.0, 0.01); }, grid,
            1e-8);
        ok = ok && !bad.passed;
        return ok;
    });

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
