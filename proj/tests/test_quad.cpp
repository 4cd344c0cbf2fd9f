#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <rogers/quad.hpp>

using namespace rogers;
using Catch::Approx;

TEST_CASE("finite-interval adaptive quadrature") {
    QuadOptions opts;
    auto r1 = integrate([](double x) { return complex(std::sin(x)); }, 0.0, pi, opts);
    CHECK(r1.converged);
    CHECK(std::abs(r1.value - 2.0) < 1e-12);

    // split points are honoured and do not change the value
    auto r2 = integrate([](double x) { return complex(std::abs(x - 0.3)); }, 0.0, 1.0,
                        opts, {0.3});
    CHECK(std::abs(r2.value - (0.5 * 0.09 + 0.5 * 0.49)) < 1e-12);
}

TEST_CASE("half-line integrals") {
    QuadOptions opts;
    auto r1 = integrate_halfline([](double r) { return complex(1.0 / (1.0 + r * r)); }, opts);
    CHECK(r1.converged);
    CHECK(std::abs(r1.value - pi / 2.0) < 1e-10);

    auto r2 = integrate_halfline(
        [](double r) { return complex(std::log(r) / (1.0 + r * r)); }, opts);
    CHECK(std::abs(r2.value) < 1e-10);

    auto r3 = integrate_halfline(
        [](double r) { return complex(std::exp(-r * r) / (1.0 + r * r)); }, opts);
    const double oracle = (pi / 2.0) * std::exp(1.0) * std::erfc(1.0);
    CHECK(std::abs(r3.value - complex(oracle)) < 1e-10);
}

TEST_CASE("sum over splits equals unsplit result") {
    QuadOptions opts;
    auto g = [](double r) { return complex(r / std::pow(1.0 + r * r, 2)); };
    auto whole = integrate_halfline(g, opts);
    auto split = integrate_halfline(g, opts, {0.5, 2.0, 17.0});
    CHECK(std::abs(whole.value - split.value) <=
          10.0 * std::max(whole.err_estimate + split.err_estimate, 1e-13));
    CHECK(std::abs(whole.value - 0.5) < 1e-10);
}

TEST_CASE("principal value integrals") {
    QuadOptions opts;
    auto r1 = integrate_pv([](double v) { return complex(1.0 / (1.0 - v)); }, 1.0, opts,
                           0.0, 2.0);
    CHECK(std::abs(r1.value) < 1e-9);

    auto g2 = [](double v) { return complex(1.0 / ((1.0 - v) * (1.0 + v * v))); };
    auto r2 = integrate_pv(g2, 1.0, opts);
    CHECK(std::abs(r2.value - pi / 4.0) < 1e-8);

    // Brute-force excision oracle: the symmetric excision carries an O(eps)
    // bias from the smooth part, so Richardson-extrapolate over eps, eps/2.
    auto g3 = [](double v) { return complex(v / ((1.0 - v) * std::pow(1.0 + v * v, 2))); };
    auto excised = [&](double eps) {
        auto left = integrate(g3, 0.0, 1.0 - eps, opts);
        auto mid = integrate(g3, 1.0 + eps, 50.0, opts, {2.0, 10.0});
        auto tail = integrate_halfline([&](double r) { return g3(50.0 + r); }, opts);
        return left.value + mid.value + tail.value;
    };
    const complex oracle = 2.0 * excised(5e-7) - excised(1e-6);
    auto r3 = integrate_pv(g3, 1.0, opts);
    CHECK(std::abs(r3.value - oracle) < 1e-7);

    // Ladder-tail invariance.
    QuadOptions tail_opts = opts;
    tail_opts.pv_epsilon_ladder = {1e-3, 3e-4, 1e-4};
    auto r4 = integrate_pv(g2, 1.0, tail_opts);
    CHECK(std::abs(r4.value - r2.value) < 1e-7);
}

TEST_CASE("limit extrapolation") {
    std::vector<std::pair<double, complex>> lin;
    for (double h : {0.1, 0.01, 0.001}) lin.emplace_back(h, complex(1.0 + h));
    CHECK(std::abs(extrapolate_limit(lin) - complex(1.0)) < 1e-12);

    std::vector<std::pair<double, complex>> quad_seq;
    for (double h : {0.2, 0.1, 0.05, 0.025}) quad_seq.emplace_back(h, complex(2.0 + h * h));
    CHECK(std::abs(extrapolate_limit(quad_seq) - complex(2.0)) < 1e-12);

    CHECK_THROWS_AS(extrapolate_limit({{0.1, complex(1.0)}, {0.01, complex(1.0)}}),
                    InsufficientDataError);
}

TEST_CASE("dilogarithm") {
    CHECK(std::abs(dilog(complex(0.0))) == 0.0);
    CHECK(std::abs(dilog(complex(1.0)) - complex(pi * pi / 6.0)) < 1e-14);

    // Alternating-series brute sum at z = -1 (truncation error ~ N^-2).
    double brute = 0.0;
    for (int k = 1; k <= 40000; ++k) brute += std::pow(-1.0, k) / double(k * k);
    CHECK(std::abs(dilog(complex(-1.0)) - complex(brute)) < 1e-7);
    CHECK(std::abs(dilog(complex(-1.0)) - complex(-pi * pi / 12.0)) < 1e-14);

    CHECK_THROWS_AS(dilog(complex(2.0)), BranchCutError);

    // Reflection identity on a grid in the unit disc, away from the cuts.
    for (int i = 0; i < 50; ++i) {
        const double rho = 0.05 + 0.85 * (i % 10) / 10.0;
        const double th = 0.3 + 5.5 * (i / 10) / 5.0;
        const complex z = rho * std::exp(complex(0.0, th));
        if (std::abs(z - 1.0) < 0.05 || std::abs(z) < 0.05) continue;
        const complex lhs = dilog(z) + dilog(complex(1.0) - z);
        const complex rhs =
            complex(pi * pi / 6.0) - std::log(z) * std::log(complex(1.0) - z);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
    }

    // Series sanity inside |z| < 1 against direct power series.
    const complex z(0.3, -0.4);
    complex series(0.0);
    complex zp = z;
    for (int k = 1; k <= 200; ++k) {
        series += zp / double(k * k);
        zp *= z;
    }
    CHECK(std::abs(dilog(z) - series) < 1e-13);
}

TEST_CASE("continuous logarithm along a path") {
    std::vector<complex> circle;
    for (int k = 0; k <= 12; ++k)
        circle.push_back(std::exp(complex(0.0, k * pi / 8.0)));
    auto logs = continuous_log_samples(circle);
    for (int k = 0; k <= 12; ++k) {
        CHECK(logs[k].imag() == Approx(k * pi / 8.0).margin(1e-12));
        // differs from the principal log by a multiple of 2*pi
        const double diff = logs[k].imag() - std::arg(circle[k]);
        CHECK(std::abs(diff / (2.0 * pi) - std::round(diff / (2.0 * pi))) < 1e-12);
    }

    std::vector<complex> constant(5, complex(3.7));
    for (const auto& v : continuous_log_samples(constant)) CHECK(v.imag() == 0.0);

    // Two full windings resolved against brute-force argument accumulation.
    std::vector<complex> winding;
    for (int k = 0; k <= 400; ++k) {
        const double t = 4.0 * pi * k / 400.0;
        winding.push_back((2.0 + std::cos(3.0 * t)) * std::exp(complex(0.0, t)));
    }
    auto wl = continuous_log_samples(winding);
    CHECK(wl.back().imag() == Approx(4.0 * pi).margin(1e-10));

    CHECK_THROWS_AS(continuous_log_samples({complex(1.0), complex(-1.0)}),
                    PathTooCoarseError);
}
