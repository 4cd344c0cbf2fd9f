// Command-line front end: parse a function specification from JSON, run the
// library operations, and emit deterministic CSV/JSON tables.
//
// Exit codes: 0 success, 1 non-convergent cells (flagged in-band in the
// `converged` column), 2 bad arguments or malformed spec.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rogers/cli_support.hpp"
#include "rogers/extended_wh.hpp"
#include "rogers/fluctuation.hpp"
#include "rogers/real_curve.hpp"
#include "rogers/rogers_core.hpp"
#include "rogers/wiener_hopf.hpp"

namespace {

using rogers::complex;
using rogers::cli::Table;

struct CommonArgs {
    std::string spec_path;
    std::string out_path;
    std::string format = "csv";
    double rtol = 0.0;  // 0 = library default
    std::string grid = "0.01,100,64";
    std::string tau_list = "1";
    std::string xi_list = "1";
    std::string t_list = "1";
    std::uint64_t seed = 1;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw rogers::InvalidSpecError(std::string("bad ") + what +
                                           " list entry: " + item);
        }
    }
    if (out.empty())
        throw rogers::InvalidSpecError(std::string("empty ") + what + " list");
    return out;
}

struct GridSpec {
    double r_min = 0.01, r_max = 100.0;
    int n = 64;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const std::vector<double> v = parse_list(s, "grid");
    if (v.size() != 3 || !(v[0] > 0.0) || !(v[1] > v[0]) || v[2] < 2 ||
        v[2] != std::floor(v[2]))
        throw rogers::InvalidSpecError("grid must be rmin,rmax,n with 0<rmin<rmax, n>=2");
    g.r_min = v[0];
    g.r_max = v[1];
    g.n = static_cast<int>(v[2]);
    return g;
}

rogers::FunctionSpec load_spec(const std::string& path) {
    if (path.empty()) throw rogers::InvalidSpecError("--spec is required");
    std::ifstream in(path);
    if (!in) throw rogers::InvalidSpecError("cannot open spec file: " + path);
    rogers::cli::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw rogers::InvalidSpecError(std::string("malformed JSON: ") + e.what());
    }
    return rogers::cli::parse_spec(j);
}

rogers::StableParams require_stable(const rogers::FunctionSpec& spec,
                                    const char* cmd) {
    if (spec.family != rogers::Family::Stable)
        throw rogers::InvalidSpecError(std::string(cmd) +
                                       " requires a {\"family\":\"stable\"} spec");
    return spec.stable;
}

void emit(const CommonArgs& args, const Table& table) {
    std::ostringstream body;
    if (args.format == "json")
        rogers::cli::write_json(body, table);
    else
        rogers::cli::write_csv(body, table);
    if (args.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(args.out_path, std::ios::binary);
        if (!out)
            throw rogers::InvalidSpecError("cannot open output file: " + args.out_path);
        out << body.str();
    }
}

rogers::QuadOptions quad_options(const CommonArgs& args) {
    rogers::QuadOptions opts;
    if (args.rtol > 0.0) opts.rel_tol = args.rtol;
    return opts;
}

// Runs one table cell; a NonConvergentError is flagged in-band rather than
// aborting the table.
template <typename F>
bool guarded(F&& body, bool& any_nonconvergent) {
    try {
        body();
        return true;
    } catch (const rogers::NonConvergentError&) {
        any_nonconvergent = true;
        return false;
    }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int cmd_eval(const CommonArgs& args) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const GridSpec g = parse_grid(args.grid);
    Table t;
    t.columns = {"xi", "re_f", "im_f"};
    for (int i = 0; i < g.n; ++i) {
        const double xi =
            g.r_min * std::pow(g.r_max / g.r_min, double(i) / (g.n - 1));
        const complex v = rogers::evaluate(f, complex(xi, 0.0));
        t.rows.push_back({xi, v.real(), v.imag()});
    }
    emit(args, t);
    return 0;
}

int cmd_curve(const CommonArgs& args) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const GridSpec g = parse_grid(args.grid);
    const rogers::CurveGrid grid = rogers::curve_grid(f, g.r_min, g.r_max, g.n);
    Table t;
    t.columns = {"r", "zeta_re", "zeta_im", "arg_zeta", "lambda", "lambda_prime",
                 "on_axis"};
    for (const auto& s : grid.samples)
        t.rows.push_back({s.r, s.zeta.real(), s.zeta.imag(), s.arg_zeta, s.lam,
                          s.lam_prime, s.on_axis});
    emit(args, t);
    return 0;
}

int cmd_wh(const CommonArgs& args) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const rogers::QuadOptions opts = quad_options(args);
    bool any_nc = false;
    Table t;
    t.columns = {"xi", "up", "down", "err_up", "err_down", "converged"};
    for (double xi : parse_list(args.xi_list, "xi")) {
        double up = kNaN, down = kNaN, err_up = kNaN, err_down = kNaN;
        const bool ok = guarded(
            [&] {
                const rogers::WHValue u =
                    rogers::wh_factor(f, rogers::Side::Up, xi, opts);
                const rogers::WHValue d =
                    rogers::wh_factor(f, rogers::Side::Down, xi, opts);
                up = u.value.real();
                down = d.value.real();
                err_up = u.err;
                err_down = d.err;
            },
            any_nc);
        t.rows.push_back({xi, up, down, err_up, err_down, ok});
    }
    emit(args, t);
    return any_nc ? 1 : 0;
}

int cmd_kappa(const CommonArgs& args) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const rogers::QuadOptions opts = quad_options(args);
    bool any_nc = false;
    Table t;
    t.columns = {"tau", "xi", "up", "down", "kappa_dot", "err", "converged"};
    for (double tau : parse_list(args.tau_list, "tau")) {
        for (double xi : parse_list(args.xi_list, "xi")) {
            double up = kNaN, down = kNaN, dot = kNaN, err = kNaN;
            const bool ok = guarded(
                [&] {
                    const rogers::KappaValue u =
                        rogers::kappa(f, rogers::Side::Up, tau, xi, opts);
                    const rogers::KappaValue d =
                        rogers::kappa(f, rogers::Side::Down, tau, xi, opts);
                    up = u.value.real();
                    down = d.value.real();
                    dot = u.kappa_dot.real();
                    err = std::max(u.err, d.err);
                },
                any_nc);
            t.rows.push_back({tau, xi, up, down, dot, err, ok});
        }
    }
    emit(args, t);
    return any_nc ? 1 : 0;
}

int cmd_sup(const CommonArgs& args, const std::string& side_name) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const rogers::QuadOptions opts = quad_options(args);
    const rogers::Side side =
        side_name == "down" ? rogers::Side::Down : rogers::Side::Up;
    bool any_nc = false;
    Table t;
    t.columns = {"t", "xi", "value", "err", "converged"};
    for (double tv : parse_list(args.t_list, "t")) {
        for (double xi : parse_list(args.xi_list, "xi")) {
            double value = kNaN;
            const bool ok = guarded(
                [&] {
                    value = rogers::extreme_laplace(f, {tv, xi, side}, opts);
                },
                any_nc);
            t.rows.push_back({tv, xi, value, 0.0, ok});
        }
    }
    emit(args, t);
    return any_nc ? 1 : 0;
}

int cmd_stable_sup(const CommonArgs& args, bool density) {
    const rogers::StableParams p =
        require_stable(load_spec(args.spec_path), "stable-sup");
    const rogers::QuadOptions opts = quad_options(args);
    bool any_nc = false;
    Table t;
    if (density) {
        t.columns = {"t", "x", "density", "converged"};
        for (double tv : parse_list(args.t_list, "t")) {
            for (double x : parse_list(args.xi_list, "xi")) {
                double value = kNaN;
                const bool ok = guarded(
                    [&] { value = rogers::stable1_sup_density(p, tv, x, opts); },
                    any_nc);
                t.rows.push_back({tv, x, value, ok});
            }
        }
    } else {
        t.columns = {"t", "xi", "value", "converged"};
        for (double tv : parse_list(args.t_list, "t")) {
            for (double xi : parse_list(args.xi_list, "xi")) {
                double value = kNaN;
                const bool ok = guarded(
                    [&] { value = rogers::stable_sup_laplace(p, tv, xi, opts); },
                    any_nc);
                t.rows.push_back({tv, xi, value, ok});
            }
        }
    }
    emit(args, t);
    return any_nc ? 1 : 0;
}

int cmd_check(const CommonArgs& args) {
    const rogers::RogersFunction f = rogers::make(load_spec(args.spec_path));
    const rogers::QuadOptions opts = quad_options(args);
    bool any_nc = false;
    Table t;
    t.columns = {"check", "value", "target", "tol", "passed"};
    auto row = [&](const std::string& name, double value, double target,
                   double tol) {
        const bool passed = std::isfinite(value) && std::abs(value - target) <= tol;
        t.rows.push_back({name, value, target, tol, passed});
    };

    // Half-plane positivity of Re(f(xi)/xi).
    {
        const rogers::GridCheckReport rep =
            rogers::check_rogers(f, rogers::log_polar_grid());
        row("rogers_property", rep.max_violation, 0.0, 1e-9);
    }
    // f(xi) = conj f(-conj xi) across the axis.
    {
        double worst = 0.0;
        for (const complex xi :
             {complex(0.5, 1.0), complex(2.0, -3.0), complex(10.0, 0.2)}) {
            const complex a = rogers::evaluate(f, xi);
            const complex b = std::conj(rogers::evaluate(f, -std::conj(xi)));
            worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        }
        row("conjugate_symmetry", worst, 0.0, 1e-10);
    }
    // Internal consistency of the factorisation integrals:
    //   ratio_up(x1,x2) * ratio_down(x1,x2) = product(x1,x1)/product(x2,x2).
    {
        double value = kNaN;
        guarded(
            [&] {
                const double x1 = 2.0, x2 = 0.5;
                const complex lhs =
                    rogers::wh_ratio(f, rogers::Side::Up, x1, x2, opts).value *
                    rogers::wh_ratio(f, rogers::Side::Down, x1, x2, opts).value;
                const complex rhs = rogers::wh_product(f, x1, x1, opts).value /
                                    rogers::wh_product(f, x2, x2, opts).value;
                value = std::abs(lhs / rhs - 1.0);
            },
            any_nc);
        row("factorisation_identity", value, 0.0, 1e-8);
    }
    // Closed-form factors, when the family carries them.
    if (f.closed_form && f.closed_form->wh_up) {
        double value = kNaN;
        guarded(
            [&] {
                const complex num =
                    rogers::wh_ratio(f, rogers::Side::Up, 2.0, 1.0, opts).value;
                const complex den = f.closed_form->wh_up(complex(2.0)) /
                                    f.closed_form->wh_up(complex(1.0));
                value = std::abs(num / den - 1.0);
            },
            any_nc);
        row("closed_form_up_ratio", value, 0.0, 1e-7);
    }
    // Balanced-only identities.
    if (rogers::classify_balance(f) == rogers::Balance::Balanced) {
        double value = kNaN;
        guarded(
            [&] { value = rogers::xwh_integral_identity(f, 1.0, 2.0, opts); },
            any_nc);
        row("integral_identity", value, 1.0, 1e-5);
    }
    // Complete Bernstein property of tau -> kappa_up(tau; 1).
    {
        double value = kNaN;
        guarded(
            [&] {
                auto g = [&](complex tau) {
                    return rogers::kappa(f, rogers::Side::Up, tau, 1.0, opts).value;
                };
                const rogers::GridCheckReport rep = rogers::check_cbf(
                    g, rogers::log_polar_grid(0.1, 10.0, 4, 4), 1e-8);
                value = rep.max_violation;
            },
            any_nc);
        row("cbf_kappa_up_in_tau", value, 0.0, 1e-8);
    }
    emit(args, t);
    return any_nc ? 1 : 0;
}

int cmd_mc(const CommonArgs& args, std::size_t n_paths, std::size_t n_steps) {
    const rogers::StableParams p = require_stable(load_spec(args.spec_path), "mc");
    const double tv = parse_list(args.t_list, "t").front();
    const std::vector<double> xis = parse_list(args.xi_list, "xi");
    const rogers::McSummary mc =
        rogers::mc_sup(p, tv, n_paths, n_steps, args.seed, xis);
    if (args.format == "json") {
        rogers::cli::json out;
        out["n_paths"] = mc.n_paths;
        out["n_steps"] = mc.n_steps;
        out["estimates"] = rogers::cli::json::array();
        for (const auto& e : mc.estimates) {
            rogers::cli::json row;
            row["xi"] = e.xi;
            row["value"] = e.value;
            row["stderr"] = e.std_err;
            out["estimates"].push_back(std::move(row));
        }
        std::ostringstream body;
        body << out.dump(2) << "\n";
        if (args.out_path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream f(args.out_path, std::ios::binary);
            if (!f)
                throw rogers::InvalidSpecError("cannot open output file: " +
                                               args.out_path);
            f << body.str();
        }
        return 0;
    }
    Table t;
    t.columns = {"xi", "value", "stderr"};
    for (const auto& e : mc.estimates) t.rows.push_back({e.xi, e.value, e.std_err});
    emit(args, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rogers-function fluctuation-theory toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string side = "up";
    bool density = false;
    std::size_t n_paths = 10000, n_steps = 4096;

    auto add_common = [&](CLI::App* sub, bool needs_spec = true) {
        auto* opt = sub->add_option("--spec", args.spec_path, "function spec JSON");
        if (needs_spec) opt->required();
        sub->add_option("--out", args.out_path, "output path (default stdout)");
        sub->add_option("--format", args.format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--rtol", args.rtol, "relative tolerance override")
            ->check(CLI::PositiveNumber);
        sub->add_option("--grid", args.grid, "rmin,rmax,n");
        sub->add_option("--tau", args.tau_list, "comma-separated tau values");
        sub->add_option("--xi", args.xi_list, "comma-separated xi values");
        sub->add_option("--t", args.t_list, "comma-separated t values");
        sub->add_option("--seed", args.seed, "RNG seed");
        return sub;
    };

    CLI::App* c_eval = add_common(app.add_subcommand("eval", "tabulate f on a grid"));
    CLI::App* c_curve =
        add_common(app.add_subcommand("curve", "curve of real values table"));
    CLI::App* c_wh =
        add_common(app.add_subcommand("wh", "Wiener-Hopf factors at points"));
    CLI::App* c_kappa =
        add_common(app.add_subcommand("kappa", "extended factors over tau x xi"));
    CLI::App* c_sup =
        add_common(app.add_subcommand("sup", "supremum Laplace transform table"));
    c_sup->add_option("--side", side, "up|down")
        ->check(CLI::IsMember({"up", "down"}));
    CLI::App* c_ssup = add_common(
        app.add_subcommand("stable-sup", "stable supremum transform or density"));
    c_ssup->add_flag("--density", density, "alpha=1 supremum density over x");
    CLI::App* c_check =
        add_common(app.add_subcommand("check", "invariant suite pass/fail report"));
    CLI::App* c_mc =
        add_common(app.add_subcommand("mc", "Monte Carlo supremum summary"));
    c_mc->add_option("--paths", n_paths, "number of sample paths");
    c_mc->add_option("--steps", n_steps, "steps (power of two)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_eval->parsed()) return cmd_eval(args);
        if (c_curve->parsed()) return cmd_curve(args);
        if (c_wh->parsed()) return cmd_wh(args);
        if (c_kappa->parsed()) return cmd_kappa(args);
        if (c_sup->parsed()) return cmd_sup(args, side);
        if (c_ssup->parsed()) return cmd_stable_sup(args, density);
        if (c_check->parsed()) return cmd_check(args);
        if (c_mc->parsed()) return cmd_mc(args, n_paths, n_steps);
    } catch (const rogers::InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const rogers::NonConvergentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
