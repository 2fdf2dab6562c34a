#pragma once

#include <functional>
#include <vector>

#include "hypctrl/core.hpp"
#include "hypctrl/cweno.hpp"

namespace hypctrl {

/// Upwind flux of f(R) = Lambda R at an interface with speeds lp > 0 > lm.
Pair upwind_flux(const Pair& left_val, const Pair& right_val, double lp, double lm);

/// Source G(R; x) - dLambda/dx(x) R, i.e. the source of the conservative form.
Pair conservative_source(const Pair& r, double x, const SystemSpec& system);

/// Three-node Gauss-Lobatto (Simpson) cell average of the conservative source.
Pair source_quadrature(const NodeValues<Pair>& v, double x_left, double x_center, double x_right,
                       const SystemSpec& system);

/// Semi-discrete tendency d/dt of the cell averages using a precomputed
/// reconstruction. Inflow traces are closed by R+(0) = kappa R-(0),
/// R-(L) = kappa R+(L).
std::vector<Pair> rhs(const Reconstruction& recon, const Grid& grid, const SystemSpec& system, double kappa);

/// Same as above, reconstructing from the state first. Throws NumericalError
/// if the tendency is not finite.
std::vector<Pair> rhs(const RiemannState& state, const Grid& grid, const SystemSpec& system, double kappa);

/// Largest stable step dt = cfl dx / max |Lambda| over the cell edges.
double cfl_dt(const Grid& grid, const SystemSpec& system, double cfl);

using RhsClosure = std::function<std::vector<Pair>(const std::vector<Pair>&)>;

/// Three-stage SSP Runge-Kutta step in Shu-Osher form.
std::vector<Pair> ssprk3_step(const std::vector<Pair>& u, double dt, const RhsClosure& op);

/// Convenience overload advancing state.t as well.
RiemannState ssprk3_step(const RiemannState& state, double dt, const RhsClosure& op);

/// Closure binding grid, system and a control value frozen over the step.
class SemiDiscreteRhs {
public:
    SemiDiscreteRhs(Grid grid, SystemSpec system, BoundarySpec boundary = {});

    void set_kappa(double kappa);
    double kappa() const { return boundary_.kappa; }
    const Grid& grid() const { return grid_; }
    const SystemSpec& system() const { return system_; }

    std::vector<Pair> operator()(const std::vector<Pair>& avg) const;

private:
    Grid grid_;
    SystemSpec system_;
    BoundarySpec boundary_;
};

}  // namespace hypctrl
