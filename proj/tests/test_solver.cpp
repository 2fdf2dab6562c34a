#include <doctest.h>

#include <cmath>
#include <random>

#include "hypctrl/scenarios.hpp"
#include "hypctrl/simulation.hpp"
#include "hypctrl/solver.hpp"
#include "oracles.hpp"

using namespace hypctrl;

namespace {

SystemSpec speeds(double lp, double lm) {
    SystemSpec s = make_scenario("conservation").system;
    s.lambda_plus = [lp](double) { return lp; };
    s.lambda_minus = [lm](double) { return lm; };
    return s;
}

RiemannState sincos(const Grid& g) { return initial_averages(InitialData::SinCos, g); }

}  // namespace

TEST_CASE("upwind flux") {
    const Pair f = upwind_flux({1.5, 2.5}, {3.5, 4.5}, 1.0, -1.0);
    CHECK(f == Pair{1.5, -4.5});
    CHECK(upwind_flux({0, 0}, {0, 0}, 2.0, -3.0) == Pair{0, 0});
    CHECK(upwind_flux({1, 1}, {1, 1}, 1.0, -1.0) == Pair{1, -1});
    CHECK_THROWS(upwind_flux({1, 1}, {1, 1}, 0.0, -1.0));
    CHECK_THROWS(upwind_flux({1, 1}, {1, 1}, 1.0, 0.0));
}

TEST_CASE("source quadrature") {
    SystemSpec s = speeds(1.0, -1.0);
    s.source = [](const Pair&, double) { return Pair{0.7, -0.2}; };
    const NodeValues<Pair> any{{1, 2}, {3, 4}, {5, 6}};
    const Pair c = source_quadrature(any, 0.0, 0.5, 1.0, s);
    CHECK(c.plus == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(c.minus == doctest::Approx(-0.2).epsilon(1e-15));

    // Simpson is exact on cubics.
    s.source = [](const Pair&, double x) { return Pair{x * x, x * x * x}; };
    const Pair q = source_quadrature(any, 0.0, 0.5, 1.0, s);
    CHECK(q.plus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(q.minus == doctest::Approx(0.25).epsilon(1e-15));

    for (const char* name : {"linear", "lipschitz", "general", "conservation"}) {
        const Pair z = source_quadrature({}, 0.0, 0.5, 1.0, make_scenario(name).system);
        CHECK(z == Pair{0, 0});
    }
}

TEST_CASE("non-conservative correction uses the speed derivative") {
    SystemSpec s = speeds(1.0, -1.0);
    s.dlambda_plus_dx = [](double x) { return 2.0 * x; };
    s.dlambda_minus_dx = [](double) { return -3.0; };
    const Pair g = conservative_source({2.0, 1.0}, 0.5, s);
    CHECK(g.plus == doctest::Approx(-2.0));
    CHECK(g.minus == doctest::Approx(3.0));
}

TEST_CASE("cfl step") {
    CHECK(cfl_dt(build_grid(1.0, 32), speeds(1.0, -1.0), 0.45) == doctest::Approx(0.0140625).epsilon(1e-15));
    CHECK(cfl_dt(build_grid(1.0, 10), speeds(2.0, -2.0), 0.5) == doctest::Approx(0.025).epsilon(1e-15));
    CHECK(cfl_dt(build_grid(1.0, 10), speeds(1.0, -4.0), 0.4) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_THROWS(cfl_dt(build_grid(1.0, 10), speeds(1.0, -1.0), 1.0));
}

TEST_CASE("zero state has zero tendency in every scenario") {
    const Grid g = build_grid(1.0, 32);
    for (const char* name : {"linear", "lipschitz", "general", "conservation"}) {
        RiemannState z;
        z.avg.assign(32, {});
        for (double kappa : {0.0, 0.5, 1.0}) {
            for (const Pair& v : rhs(z, g, make_scenario(name).system, kappa)) CHECK(v == Pair{0, 0});
        }
    }
}

TEST_CASE("constant state with perfect reflection is stationary without source") {
    const Grid g = build_grid(1.0, 16);
    RiemannState s;
    s.avg.assign(16, {0.8, 0.8});
    for (const Pair& v : rhs(s, g, speeds(1.0, -1.0), 1.0)) {
        CHECK(std::abs(v.plus) <= 1e-14);
        CHECK(std::abs(v.minus) <= 1e-14);
    }
}

TEST_CASE("tendency converges to a fine-grid reference") {
    const SystemSpec sys = make_scenario("linear").system;
    const double kappa = 1.0 / oracle::e;
    const std::size_t fine = 1024;
    const Grid gf = build_grid(1.0, fine);
    const auto ref = rhs(sincos(gf), gf, sys, kappa);

    // Max error over the interior cells and over the two-cell bands next to
    // each boundary, whose one-sided stencils carry a different error constant.
    struct Errors {
        double interior{0.0};
        double band{0.0};
    };
    auto error_at = [&](std::size_t n) {
        const Grid g = build_grid(1.0, n);
        const auto tend = rhs(sincos(g), g, sys, kappa);
        const std::size_t r = fine / n;
        Errors err;
        for (std::size_t j = 0; j < n; ++j) {
            Pair avg;
            for (std::size_t k = 0; k < r; ++k) avg += ref[j * r + k];
            avg *= 1.0 / static_cast<double>(r);
            const double e = std::max(std::abs(avg.plus - tend[j].plus), std::abs(avg.minus - tend[j].minus));
            double& slot = (j < 2 || j + 2 >= n) ? err.band : err.interior;
            slot = std::max(slot, e);
        }
        return err;
    };
    const Errors e32 = error_at(32);
    const Errors e64 = error_at(64);
    const Errors e128 = error_at(128);
    const double dx = 1.0 / 32.0;
    INFO("interior " << e32.interior << ", " << e64.interior << ", " << e128.interior);
    INFO("boundary band " << e32.band << ", " << e64.band << ", " << e128.band);
    CHECK(e32.interior <= 50.0 * dx * dx * dx);
    CHECK(std::log2(e32.interior / e64.interior) >= 2.7);
    CHECK(std::log2(e64.interior / e128.interior) >= 2.7);
    CHECK(std::log2(e32.band / e64.band) >= 1.9);
    CHECK(std::log2(e64.band / e128.band) >= 1.9);
}

TEST_CASE("ssp-rk3 examples") {
    const RhsClosure decay = [](const std::vector<Pair>& u) {
        std::vector<Pair> out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = -1.0 * u[i];
        return out;
    };
    const RhsClosure zero = [](const std::vector<Pair>& u) { return std::vector<Pair>(u.size()); };

    const std::vector<Pair> u0{{1.0, -2.0}, {0.5, 3.0}};
    CHECK(ssprk3_step(u0, 0.3, zero) == u0);

    const auto u1 = ssprk3_step(std::vector<Pair>{{1.0, 1.0}}, 0.1, decay);
    const double z = -0.1;
    CHECK(u1[0].plus == doctest::Approx(1.0 + z + z * z / 2.0 + z * z * z / 6.0).epsilon(1e-15));
    CHECK(u1[0].plus == doctest::Approx(0.9048333333333333).epsilon(1e-14));

    auto integrate = [&](double dt) {
        std::vector<Pair> u{{1.0, 1.0}};
        const auto steps = static_cast<int>(std::lround(1.0 / dt));
        for (int i = 0; i < steps; ++i) u = ssprk3_step(u, dt, decay);
        return std::abs(u[0].plus - std::exp(-1.0));
    };
    const double ratio = integrate(1e-2) / integrate(1e-3);
    INFO("error ratio " << ratio);
    CHECK(ratio > 0.8e3);
    CHECK(ratio < 1.2e3);

    RiemannState s;
    s.avg = {{1.0, 1.0}};
    s.t = 2.0;
    const RiemannState s1 = ssprk3_step(s, 0.25, decay);
    CHECK(s1.t == 2.25);
}

TEST_CASE("ssp-rk3 amplification factor") {
    for (double z = -1.0; z <= 1.0; z += 0.01) {
        const RhsClosure op = [z](const std::vector<Pair>& u) {
            std::vector<Pair> out(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) out[i] = z * u[i];
            return out;
        };
        const auto u = ssprk3_step(std::vector<Pair>{{1.0, 0.0}}, 1.0, op);
        CHECK(std::abs(u[0].plus - (1.0 + z + z * z / 2.0 + z * z * z / 6.0)) <= 1e-14);
    }
}

TEST_CASE("zero is a fixed point of the time step") {
    const Grid g = build_grid(1.0, 32);
    for (const char* name : {"linear", "lipschitz", "general", "conservation"}) {
        SemiDiscreteRhs op(g, make_scenario(name).system, BoundarySpec(0.5, 1.0));
        const auto u = ssprk3_step(std::vector<Pair>(32), 0.01, std::cref(op));
        for (const Pair& v : u) {
            CHECK(std::abs(v.plus) <= 1e-14);
            CHECK(std::abs(v.minus) <= 1e-14);
        }
    }
}

TEST_CASE("mass is conserved with perfect reflection and the turning source") {
    const Grid g = build_grid(1.0, 32);
    SemiDiscreteRhs op(g, make_scenario("linear").system, BoundarySpec(1.0, 1.0));
    const double dt = cfl_dt(g, op.system(), 0.45);
    RiemannState s = sincos(g);
    auto mass = [&](const RiemannState& st) {
        double m = 0.0;
        for (const Pair& p : st.avg) m += (p.plus + p.minus) * g.dx();
        return m;
    };
    const double m0 = mass(s);
    for (int i = 0; i < 100; ++i) s = ssprk3_step(s, dt, std::cref(op));
    CHECK(std::abs(mass(s) - m0) <= 1e-10);
}

TEST_CASE("semi-discrete operator binds the control value") {
    const Grid g = build_grid(1.0, 8);
    SemiDiscreteRhs op(g, speeds(1.0, -1.0));
    CHECK(op.kappa() == 0.0);
    op.set_kappa(0.6);
    CHECK(op.kappa() == 0.6);
    CHECK_THROWS(op.set_kappa(1.5));
    RiemannState s;
    s.avg.assign(8, {1.0, 1.0});
    const auto a = op(s.avg);
    const auto b = rhs(s, g, op.system(), 0.6);
    for (std::size_t j = 0; j < 8; ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("non-finite tendency is reported") {
    const Grid g = build_grid(1.0, 8);
    RiemannState s;
    s.avg.assign(8, {1.0, 1.0});
    s.avg[3].plus = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(rhs(s, g, speeds(1.0, -1.0), 0.5), NumericalError);
}

TEST_CASE("advection of a compact pulse converges at third order") {
    // sin^4 pulse on [0.3, 0.7] for R+ and [0.4, 0.8] for R-; exact solution
    // is the shifted profile until the pulses reach the boundary.
    auto pulse = [](double x, double a) {
        if (x <= a || x >= a + 0.4) return 0.0;
        return std::pow(std::sin(oracle::pi * (x - a) / 0.4), 4);
    };
    const double t_end = 0.15;
    double prev = 0.0;
    for (std::size_t n : {64u, 128u, 256u}) {
        const Grid g = build_grid(1.0, n);
        auto avgs = [&](double shift) {
            RiemannState s;
            s.avg.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double a = g.edge(j), b = g.edge(j + 1);
                s.avg[j] = {oracle::simpson([&](double x) { return pulse(x - shift, 0.3); }, a, b, 64) / g.dx(),
                            oracle::simpson([&](double x) { return pulse(x + shift, 0.4); }, a, b, 64) / g.dx()};
            }
            return s;
        };
        RiemannState s = avgs(0.0);
        SemiDiscreteRhs op(g, speeds(1.0, -1.0), BoundarySpec(0.0, 1.0));
        const double dt = 0.45 * g.dx();
        double t = 0.0;
        while (t < t_end) {
            const double h = std::min(dt, t_end - t);
            s = ssprk3_step(s, h, std::cref(op));
            t += h;
        }
        const RiemannState exact = avgs(t_end);
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            err += (std::abs(s.avg[j].plus - exact.avg[j].plus) + std::abs(s.avg[j].minus - exact.avg[j].minus)) *
                   g.dx();
        }
        if (prev > 0.0) {
            INFO("N = " << n << ", L1 error " << err << ", order " << std::log2(prev / err));
            CHECK(std::log2(prev / err) >= 2.5);
        }
        prev = err;
    }
}

TEST_CASE("transport of a smooth pulse converges at third order") {
    const auto rows = transport_convergence({64, 128, 256}, 0.1, 0.45);
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        INFO("N = " << rows[i].cells << ", order " << rows[i].order);
        CHECK(rows[i].order >= 2.5);
    }
}
