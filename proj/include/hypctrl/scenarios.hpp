#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "hypctrl/core.hpp"

namespace hypctrl {

/// Kac-Goldstein benchmark written for the deviation from a constant steady
/// state, with cell speed gamma and Lambda = diag(gamma, -gamma).
struct Scenario {
    std::string name;
    double gamma{1.0};
    SystemSpec system;
    InitialData initial{InitialData::SinCos};
    double alpha{0.0};
    std::optional<double> lipschitz_C;
};

/// "linear" | "lipschitz" | "general" | "conservation". Throws
/// std::invalid_argument for anything else.
Scenario make_scenario(std::string_view name);

/// Cell averages of f by 5-point Gauss-Legendre per cell.
std::vector<Pair> cell_averages(const Grid& grid, const std::function<Pair(double)>& f);

/// Initial deviation: sincos = (sin(pi x), cos(pi x)) with exact averages,
/// step = 2 sign(x - L/2) in both components, bump = smooth compactly
/// supported pulse centered at L/2, zero = steady state.
RiemannState initial_averages(InitialData descriptor, const Grid& grid);

/// Pointwise initial profile matching initial_averages.
Pair initial_profile(InitialData descriptor, double x, double length);

struct Prop1Report {
    double alpha_L{0.0};
    double max_value{0.0};    // max over kappa in (0,1) of |kappa ln kappa|
    double argmax{0.0};
    bool feasible{false};     // alpha L < max_value
    double kappa_low{0.0};    // feasible gains are the open interval (kappa_low, kappa_high)
    double kappa_high{0.0};
};

/// Feasibility of |kappa ln kappa| > alpha L for the reflecting control.
Prop1Report prop1_threshold(double alpha, double length);

/// Global Lipschitz constant of the source (spectral-norm bound of Gbar).
/// Throws std::invalid_argument for "general", whose source grows quadratically.
double lipschitz_constant(std::string_view name);

struct SteadyState {
    double plus{0.0};
    double minus{0.0};
    bool length_warning{false};  // the formula is normalized for L = 1 only
};

SteadyState kac_steady_state(double rho0_integral, double length);

std::string_view to_string(InitialData d);
InitialData initial_data_from_string(std::string_view s);

}  // namespace hypctrl
