#include "hypctrl/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypctrl/lyapunov.hpp"
#include "hypctrl/scenarios.hpp"
#include "hypctrl/solver.hpp"

namespace hypctrl {

std::size_t step_count(double t_final, double dt) {
    // Guard against t_final / dt landing a few ulps above an integer.
    const double ratio = t_final / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, rounded)) return static_cast<std::size_t>(rounded);
    return static_cast<std::size_t>(std::ceil(ratio));
}

SimulationResult run_simulation(const RunConfig& config, const StepObserver& observer) {
    config.validate();
    const Grid grid = build_grid(config.length, config.cells);
    const Scenario scenario = make_scenario(config.scenario);
    const SystemSpec& system = scenario.system;
    system.validate(grid);

    const LyapunovParams base(grid, system, 0.0);
    SimulationResult result;
    result.gamma = scenario.gamma;
    result.dt = cfl_dt(grid, system, config.cfl);
    result.steps = step_count(config.t_final, result.dt);

    std::vector<double> snap_times = config.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    std::size_t next_snap = 0;

    RiemannState state = initial_averages(config.initial, grid);
    ControlDecision previous = initial_decision(grid, base, config.control);

    for (std::size_t n = 0;; ++n) {
        const Reconstruction recon = reconstruct_all(state, grid);
        ControlDecision d;
        try {
            d = decide(recon, grid, base, system, config.control, previous);
        } catch (const NumericalError& e) {
            throw SimulationAborted(e.what(), result.records.empty() ? 0 : result.records.size() - 1);
        }
        if (observer) observer(n, state, recon, d);

        if (n % config.output_every == 0) {
            const LyapunovParams params = base.with_mu(d.mu_hat);
            TimeSeriesRecord rec;
            rec.t = state.t;
            rec.l2_sq = l2_squared(recon, grid);
            rec.lyap = lyapunov_value(recon, grid, params);
            rec.lyap_scaled = scaled_lyapunov(rec.lyap, params);
            rec.mu_hat = d.mu_hat;
            rec.kappa_star = d.kappa_star;
            rec.feasible = d.feasible;
            result.records.push_back(rec);
        }
        const bool last = n == result.steps;
        while (next_snap < snap_times.size() &&
               (state.t >= snap_times[next_snap] - 1e-12 || (last && snap_times[next_snap] >= config.t_final))) {
            result.snapshots.push_back({snap_times[next_snap], state});
            ++next_snap;
        }
        if (last) break;

        const double t_next = n + 1 == result.steps ? config.t_final : static_cast<double>(n + 1) * result.dt;
        const double h = t_next - state.t;
        const SemiDiscreteRhs op(grid, system, BoundarySpec(d.kappa_star, config.control.kappa_max));
        try {
            state = ssprk3_step(state, h, [&op](const std::vector<Pair>& u) { return op(u); });
        } catch (const NumericalError& e) {
            throw SimulationAborted(e.what(), result.records.empty() ? 0 : result.records.size() - 1);
        }
        state.t = t_next;
        if (!state.all_finite()) {
            std::ostringstream msg;
            msg << "non-finite state after step " << n + 1 << " (t=" << t_next << ")";
            throw SimulationAborted(msg.str(), result.records.empty() ? 0 : result.records.size() - 1);
        }
        previous = d;
    }
    return result;
}

std::vector<ConvergenceRow> transport_convergence(const std::vector<std::size_t>& cells, double t_end, double cfl) {
    const Scenario sc = make_scenario("conservation");
    std::vector<ConvergenceRow> rows;
    for (const std::size_t n : cells) {
        const Grid grid = build_grid(1.0, n);
        RiemannState state = initial_averages(InitialData::Bump, grid);
        const SemiDiscreteRhs op(grid, sc.system, BoundarySpec(0.0, 1.0));
        const double dt = cfl_dt(grid, sc.system, cfl);
        const std::size_t steps = step_count(t_end, dt);
        for (std::size_t k = 0; k < steps; ++k) {
            const double t_next = k + 1 == steps ? t_end : static_cast<double>(k + 1) * dt;
            state = ssprk3_step(state, t_next - state.t, [&op](const std::vector<Pair>& u) { return op(u); });
            state.t = t_next;
        }
        // R+ moves right and R- moves left with unit speed.
        const auto exact = cell_averages(grid, [&](double x) {
            return Pair{initial_profile(InitialData::Bump, x - t_end, 1.0).plus,
                        initial_profile(InitialData::Bump, x + t_end, 1.0).minus};
        });
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            err += (std::abs(state.avg[j].plus - exact[j].plus) + std::abs(state.avg[j].minus - exact[j].minus)) *
                   grid.dx();
        }
        ConvergenceRow row{n, err, 0.0};
        if (!rows.empty()) row.order = std::log2(rows.back().error / err);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ConvergenceRow> reconstruction_convergence(const std::vector<std::size_t>& cells) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<ConvergenceRow> rows;
    for (const std::size_t n : cells) {
        const Grid grid = build_grid(1.0, n);
        RiemannState state;
        state.avg.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double a = grid.edge(j);
            const double b = grid.edge(j + 1);
            const double v = (std::cos(two_pi * a) - std::cos(two_pi * b)) / (two_pi * grid.dx());
            state.avg[j] = {v, v};
        }
        const Reconstruction rec = reconstruct_all(state, grid);
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto& c = rec.cells[j];
            err = std::max({err, std::abs(c.left.plus - std::sin(two_pi * grid.edge(j))),
                            std::abs(c.center.plus - std::sin(two_pi * grid.center(j))),
                            std::abs(c.right.plus - std::sin(two_pi * grid.edge(j + 1)))});
        }
        ConvergenceRow row{n, err, 0.0};
        if (!rows.empty()) row.order = std::log2(rows.back().error / err);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hypctrl
