#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hypctrl/control.hpp"
#include "hypctrl/core.hpp"
#include "hypctrl/cweno.hpp"

namespace hypctrl {

struct TimeSeriesRecord {
    double t{0.0};
    double l2_sq{0.0};
    double lyap{0.0};
    double lyap_scaled{0.0};
    double mu_hat{0.0};
    double kappa_star{0.0};
    bool feasible{true};
};

struct Snapshot {
    double requested_t{0.0};
    RiemannState state;
};

struct SimulationResult {
    std::vector<TimeSeriesRecord> records;
    std::vector<Snapshot> snapshots;
    std::size_t steps{0};
    double dt{0.0};
    double gamma{1.0};
};

/// Called once per time level, before the step is taken, with the state, its
/// reconstruction and the control decision used for the following step.
using StepObserver =
    std::function<void(std::size_t step, const RiemannState&, const Reconstruction&, const ControlDecision&)>;

/// Aborted run; last_record is the index of the last record written.
class SimulationAborted : public NumericalError {
public:
    SimulationAborted(const std::string& what, std::size_t last_record)
        : NumericalError(what), last_record_(last_record) {}
    std::size_t last_record() const { return last_record_; }

private:
    std::size_t last_record_;
};

/// Number of SSP-RK3 steps to reach t_final with step dt, the last one clipped.
std::size_t step_count(double t_final, double dt);

/// reconstruct -> decide control -> SSP-RK3 step, recording every
/// output_every steps (including step 0).
SimulationResult run_simulation(const RunConfig& config, const StepObserver& observer = {});

struct ConvergenceRow {
    std::size_t cells{0};
    double error{0.0};
    double order{0.0};  // log2(previous error / error); 0 for the first row
};

/// Pure transport (no source, absorbing boundaries) of the smooth bump up to
/// t_end; L1 error of the cell averages against the exact shifted averages.
std::vector<ConvergenceRow> transport_convergence(const std::vector<std::size_t>& cells, double t_end, double cfl);

/// Max node error of reconstruct_all applied to exact averages of sin(2 pi x).
std::vector<ConvergenceRow> reconstruction_convergence(const std::vector<std::size_t>& cells);

}  // namespace hypctrl
