#include "hypctrl/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/lambert_w.hpp>

namespace hypctrl {

namespace {

constexpr double e = std::numbers::e;
constexpr double pi = std::numbers::pi;

// Turning operator (1/2e) [[1,-1],[-1,1]]. In the Kac-Goldstein model it
// enters the right-hand side with a positive sign (it amplifies the flux), so
// with the convention d_t R + Lambda d_x R = -G the benchmark sources are
// G = -(turning factor) R.
constexpr Mat2 turning{1.0 / (2.0 * e), -1.0 / (2.0 * e), -1.0 / (2.0 * e), 1.0 / (2.0 * e)};
constexpr Mat2 source_factor = -1.0 * turning;

SystemSpec base_system(double gamma) {
    SystemSpec s;
    s.lambda_plus = [gamma](double) { return gamma; };
    s.lambda_minus = [gamma](double) { return -gamma; };
    s.dlambda_plus_dx = [](double) { return 0.0; };
    s.dlambda_minus_dx = [](double) { return 0.0; };
    return s;
}

}  // namespace

Scenario make_scenario(std::string_view name) {
    Scenario sc;
    sc.name = std::string(name);
    sc.system = base_system(sc.gamma);
    SystemSpec& s = sc.system;
    if (name == "linear") {
        s.source_matrix = [](const Pair&, double) { return source_factor; };
        s.source = [](const Pair& r, double) { return source_factor * r; };
        s.source_is_linear = true;
        sc.alpha = 1.0 / e;
        sc.lipschitz_C = 1.0 / e;
    } else if (name == "lipschitz") {
        s.source_matrix = [](const Pair& r, double) { return std::cos(norm_sq(r)) * source_factor; };
        s.source = [](const Pair& r, double) { return std::cos(norm_sq(r)) * (source_factor * r); };
        sc.alpha = 1.0 / e;
        sc.lipschitz_C = 1.0 / e;
    } else if (name == "general") {
        // [[r-, r+], [r+, r-]] [[1,-1],[-1,1]] = (r- - r+) [[1,-1],[-1,1]]
        s.source_matrix = [](const Pair& r, double) { return (r.minus - r.plus) * source_factor; };
        s.source = [](const Pair& r, double) { return (r.minus - r.plus) * (source_factor * r); };
        sc.alpha = 1.0 / e;
    } else if (name == "conservation") {
        s.source_matrix = [](const Pair&, double) { return Mat2{}; };
        s.source = [](const Pair&, double) { return Pair{}; };
        s.source_is_linear = true;
        sc.alpha = 0.0;
        sc.lipschitz_C = 0.0;
    } else {
        throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
    }
    s.lipschitz_C = sc.lipschitz_C;
    return sc;
}

std::vector<Pair> cell_averages(const Grid& grid, const std::function<Pair(double)>& f) {
    static constexpr std::array<double, 5> nodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                                 0.9061798459386640};
    static constexpr std::array<double, 5> wts{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                               0.4786286704993665, 0.2369268850561891};
    std::vector<Pair> out(grid.cells());
    const double half = 0.5 * grid.dx();
    for (std::size_t j = 0; j < grid.cells(); ++j) {
        const double c = grid.center(j);
        Pair s;
        for (std::size_t q = 0; q < nodes.size(); ++q) s += wts[q] * f(c + half * nodes[q]);
        out[j] = 0.5 * s;
    }
    return out;
}

Pair initial_profile(InitialData descriptor, double x, double length) {
    switch (descriptor) {
        case InitialData::SinCos:
            return {std::sin(pi * x), std::cos(pi * x)};
        case InitialData::Step: {
            const double s = x > 0.5 * length ? 2.0 : (x < 0.5 * length ? -2.0 : 0.0);
            return {s, s};
        }
        case InitialData::Bump: {
            // cos^6 pulse of half-width L/4; five continuous derivatives.
            const double u = (x - 0.5 * length) / (0.25 * length);
            if (std::abs(u) >= 1.0) return {};
            const double c = std::cos(0.5 * pi * u);
            const double b = c * c * c * c * c * c;
            return {b, 0.5 * b};
        }
        case InitialData::Zero:
            return {};
    }
    return {};
}

RiemannState initial_averages(InitialData descriptor, const Grid& grid) {
    RiemannState st;
    st.avg.resize(grid.cells());
    const double dx = grid.dx();
    switch (descriptor) {
        case InitialData::SinCos:
            for (std::size_t j = 0; j < grid.cells(); ++j) {
                const double a = grid.edge(j);
                const double b = grid.edge(j + 1);
                st.avg[j] = {(std::cos(pi * a) - std::cos(pi * b)) / (pi * dx),
                             (std::sin(pi * b) - std::sin(pi * a)) / (pi * dx)};
            }
            break;
        case InitialData::Step: {
            const double mid = 0.5 * grid.length();
            for (std::size_t j = 0; j < grid.cells(); ++j) {
                const double a = grid.edge(j);
                const double b = grid.edge(j + 1);
                // Fraction of the cell right of the jump.
                const double right = std::clamp((b - mid) / dx, 0.0, 1.0);
                const double left = std::clamp((mid - a) / dx, 0.0, 1.0);
                const double v = 2.0 * (right - left);
                st.avg[j] = {v, v};
            }
            break;
        }
        case InitialData::Bump:
            st.avg = cell_averages(grid, [&](double x) { return initial_profile(descriptor, x, grid.length()); });
            break;
        case InitialData::Zero:
            break;
    }
    return st;
}

Prop1Report prop1_threshold(double alpha, double length) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
    if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
    Prop1Report r;
    r.alpha_L = alpha * length;
    r.max_value = 1.0 / e;
    r.argmax = 1.0 / e;
    r.feasible = r.alpha_L < r.max_value;
    if (!r.feasible) return r;
    if (r.alpha_L == 0.0) {
        r.kappa_low = 0.0;
        r.kappa_high = 1.0;
        return r;
    }
    // kappa ln kappa = -c with kappa = e^y gives y e^y = -c; the two real
    // branches of Lambert W give the two roots.
    const double c = r.alpha_L;
    r.kappa_low = std::exp(boost::math::lambert_wm1(-c));
    r.kappa_high = std::exp(boost::math::lambert_w0(-c));
    return r;
}

double lipschitz_constant(std::string_view name) {
    if (name == "general") {
        throw std::invalid_argument("the general source has no global Lipschitz constant");
    }
    const Scenario sc = make_scenario(name);
    return *sc.lipschitz_C;
}

SteadyState kac_steady_state(double rho0_integral, double length) {
    return {0.5 * rho0_integral, 0.5 * rho0_integral, length != 1.0};
}

std::string_view to_string(InitialData d) {
    switch (d) {
        case InitialData::SinCos: return "sincos";
        case InitialData::Step: return "step";
        case InitialData::Zero: return "zero";
        case InitialData::Bump: return "bump";
    }
    return "sincos";
}

InitialData initial_data_from_string(std::string_view s) {
    if (s == "sincos") return InitialData::SinCos;
    if (s == "step") return InitialData::Step;
    if (s == "zero") return InitialData::Zero;
    if (s == "bump") return InitialData::Bump;
    throw std::invalid_argument("unknown initial data '" + std::string(s) + "'");
}

}  // namespace hypctrl
