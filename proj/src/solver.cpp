#include "hypctrl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hypctrl/parallel.hpp"

namespace hypctrl {

Pair upwind_flux(const Pair& left_val, const Pair& right_val, double lp, double lm) {
    if (!(lp > 0.0) || !(lm < 0.0)) {
        throw std::invalid_argument("upwind flux requires lambda+ > 0 > lambda-");
    }
    return {lp * left_val.plus, lm * right_val.minus};
}

Pair conservative_source(const Pair& r, double x, const SystemSpec& system) {
    Pair g = system.source(r, x);
    if (system.dlambda_plus_dx) g.plus -= system.dlambda_plus_dx(x) * r.plus;
    if (system.dlambda_minus_dx) g.minus -= system.dlambda_minus_dx(x) * r.minus;
    return g;
}

Pair source_quadrature(const NodeValues<Pair>& v, double x_left, double x_center, double x_right,
                       const SystemSpec& system) {
    return (1.0 / 6.0) * (conservative_source(v.left, x_left, system) +
                          4.0 * conservative_source(v.center, x_center, system) +
                          conservative_source(v.right, x_right, system));
}

std::vector<Pair> rhs(const Reconstruction& recon, const Grid& grid, const SystemSpec& system, double kappa) {
    const std::size_t n = grid.cells();
    const double dx = grid.dx();

    // Interface fluxes at edges 0..N.
    std::vector<Pair> flux(n + 1);
    const auto& cells = recon.cells;
    {
        const double x0 = grid.edge(0);
        const Pair inflow{kappa * recon.trace_out_minus(), cells.front().left.minus};
        flux[0] = upwind_flux(inflow, cells.front().left, system.lambda_plus(x0), system.lambda_minus(x0));
        const double xl = grid.edge(n);
        const Pair inflow_l{cells.back().right.plus, kappa * recon.trace_out_plus()};
        flux[n] = upwind_flux(cells.back().right, inflow_l, system.lambda_plus(xl), system.lambda_minus(xl));
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double x = grid.edge(k);
        flux[k] = upwind_flux(cells[k - 1].right, cells[k].left, system.lambda_plus(x), system.lambda_minus(x));
    }

    std::vector<Pair> out(n);
    parallel_for(n, [&](std::size_t j) {
        const Pair src = source_quadrature(cells[j], grid.edge(j), grid.center(j), grid.edge(j + 1), system);
        out[j] = (-1.0 / dx) * (flux[j + 1] - flux[j]) - src;
    });
    return out;
}

std::vector<Pair> rhs(const RiemannState& state, const Grid& grid, const SystemSpec& system, double kappa) {
    auto out = rhs(reconstruct_all(state, grid), grid, system, kappa);
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (!std::isfinite(out[j].plus) || !std::isfinite(out[j].minus)) {
            std::ostringstream msg;
            msg << "non-finite tendency in cell " << j << " at t=" << state.t;
            throw NumericalError(msg.str());
        }
    }
    return out;
}

double cfl_dt(const Grid& grid, const SystemSpec& system, double cfl) {
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
    double vmax = 0.0;
    for (std::size_t k = 0; k <= grid.cells(); ++k) {
        const double x = grid.edge(k);
        vmax = std::max({vmax, std::abs(system.lambda_plus(x)), std::abs(system.lambda_minus(x))});
    }
    if (!(vmax > 0.0)) throw std::invalid_argument("characteristic speeds vanish everywhere");
    return cfl * grid.dx() / vmax;
}

namespace {

// out = a*u + b*(v + dt*l)
void combine(std::vector<Pair>& out, double a, const std::vector<Pair>& u, double b, const std::vector<Pair>& v,
             double dt, const std::vector<Pair>& l) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * u[i] + b * (v[i] + dt * l[i]);
}

}  // namespace

std::vector<Pair> ssprk3_step(const std::vector<Pair>& u, double dt, const RhsClosure& op) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const std::size_t n = u.size();
    std::vector<Pair> u1(n), u2(n), out(n);
    combine(u1, 0.0, u, 1.0, u, dt, op(u));
    combine(u2, 0.75, u, 0.25, u1, dt, op(u1));
    combine(out, 1.0 / 3.0, u, 2.0 / 3.0, u2, dt, op(u2));
    return out;
}

RiemannState ssprk3_step(const RiemannState& state, double dt, const RhsClosure& op) {
    return {ssprk3_step(state.avg, dt, op), state.t + dt};
}

SemiDiscreteRhs::SemiDiscreteRhs(Grid grid, SystemSpec system, BoundarySpec boundary)
    : grid_(grid), system_(std::move(system)), boundary_(boundary) {}

void SemiDiscreteRhs::set_kappa(double kappa) { boundary_ = BoundarySpec(kappa, boundary_.kappa_max); }

std::vector<Pair> SemiDiscreteRhs::operator()(const std::vector<Pair>& avg) const {
    return rhs(RiemannState{avg, 0.0}, grid_, system_, boundary_.kappa);
}

}  // namespace hypctrl
