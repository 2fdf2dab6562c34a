#pragma once

#include <functional>
#include <optional>

#include "hypctrl/core.hpp"
#include "hypctrl/cweno.hpp"
#include "hypctrl/lyapunov.hpp"

namespace hypctrl {

struct ScanResult {
    double mu_hat{0.0};
    bool feasible{false};
    bool zero_state{false};
};

/// Smallest mu with predicate(mu) true: walks the coarse grid step, 2 step, ...
/// up to mu_max and bisects inside the first bracketing interval down to tol.
/// Returns std::nullopt when no coarse point is feasible.
std::optional<double> scan_then_bisect(const std::function<bool(double)>& feasible, double step, double mu_max,
                                       double tol);

/// min over all 3N reconstruction nodes of the smallest eigenvalue of M.
double min_node_eigenvalue(const Reconstruction& recon, const LyapunovParams& params, const SystemSpec& system);

/// mu_hat from the pointwise eigenvalue condition lambda_min(M) >= target.
ScanResult mu_hat_matrix(const Reconstruction& recon, const LyapunovParams& base, const SystemSpec& system,
                         double target, const ControlConfig& cfg);

/// mu_hat from the global condition Q(recon; mu) >= target.
ScanResult mu_hat_rayleigh(const Reconstruction& recon, const Grid& grid, const LyapunovParams& base,
                           const SystemSpec& system, double target, const ControlConfig& cfg);

/// Gain guaranteeing a non-positive boundary form for every trace:
/// min(exp(-mu_hat L / (2 lambda_min)), kappa_max).
double kappa_star(double mu_hat, double length, double lambda_min, double kappa_max);

/// Largest kappa in [0, kappa_max] with H(traces; kappa) <= 0 for the given traces.
double kappa_from_traces(double trace_plus_L, double trace_minus_0, const LyapunovParams& params, double kappa_max);

struct ControlDecision {
    double mu_hat{0.0};
    double kappa_star{0.0};
    double H_value{0.0};
    bool feasible{true};
    bool zero_state{false};
};

/// Online control synthesis: mu_hat by the configured rule, kappa* from it,
/// and the boundary-form certificate at the current outgoing traces. If the
/// scan is infeasible the previous mu_hat and gain are held.
ControlDecision decide(const Reconstruction& recon, const Grid& grid, const LyapunovParams& base,
                       const SystemSpec& system, const ControlConfig& cfg, const ControlDecision& previous);

/// Decision used before the first step: the gain certified by the largest
/// scanned weight parameter, so an infeasible first scan still holds a
/// dissipative control.
ControlDecision initial_decision(const Grid& grid, const LyapunovParams& base, const ControlConfig& cfg);

}  // namespace hypctrl
