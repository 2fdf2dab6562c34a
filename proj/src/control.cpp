#include "hypctrl/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypctrl/parallel.hpp"

namespace hypctrl {

namespace {

// Below this Lyapunov value the state is treated as the steady state.
constexpr double zero_state_threshold = 1e-30;

void require_finite(const Reconstruction& recon) {
    for (const auto& c : recon.cells) {
        for (const Pair* p : {&c.left, &c.center, &c.right}) {
            if (!std::isfinite(p->plus) || !std::isfinite(p->minus)) {
                throw NumericalError("non-finite reconstruction node in control synthesis");
            }
        }
    }
}

}  // namespace

std::optional<double> scan_then_bisect(const std::function<bool(double)>& feasible, double step, double mu_max,
                                       double tol) {
    double lo = 0.0;
    const auto coarse_points = static_cast<std::size_t>(std::floor(mu_max / step + 1e-9));
    for (std::size_t i = 1; i <= coarse_points; ++i) {
        const double hi = static_cast<double>(i) * step;
        if (feasible(hi)) {
            double a = lo;
            double b = hi;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                if (feasible(mid)) {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            return b;
        }
        lo = hi;
    }
    return std::nullopt;
}

double min_node_eigenvalue(const Reconstruction& recon, const LyapunovParams& params, const SystemSpec& system) {
    const std::size_t n = recon.size();
    const double mu = params.mu_tilde();
    const SpeedTable& t = params.table();
    std::vector<double> cell_min(n);
    parallel_for(n, [&](std::size_t j) {
        const auto& v = recon.cells[j];
        double m = std::numeric_limits<double>::infinity();
        const Pair* nodes[3] = {&v.left, &v.center, &v.right};
        for (std::size_t q = 0; q < 3; ++q) {
            const std::size_t k = 2 * j + q;
            m = std::min(m, min_eig_2x2(matrix_M(*nodes[q], t.x[k], params.node_weights(k), mu, system)));
        }
        cell_min[j] = m;
    });
    return *std::min_element(cell_min.begin(), cell_min.end());
}

ScanResult mu_hat_matrix(const Reconstruction& recon, const LyapunovParams& base, const SystemSpec& system,
                         double target, const ControlConfig& cfg) {
    if (!(target > 0.0)) throw std::invalid_argument("target decay rate must be positive");
    require_finite(recon);
    auto ok = [&](double mu) { return min_node_eigenvalue(recon, base.with_mu(mu), system) >= target; };
    const auto mu = scan_then_bisect(ok, cfg.mu_scan_step, cfg.mu_scan_max, cfg.bisect_tol);
    if (!mu) return {0.0, false, false};
    return {*mu, true, false};
}

ScanResult mu_hat_rayleigh(const Reconstruction& recon, const Grid& grid, const LyapunovParams& base,
                           const SystemSpec& system, double target, const ControlConfig& cfg) {
    if (!(target > 0.0)) throw std::invalid_argument("target decay rate must be positive");
    require_finite(recon);
    if (lyapunov_value(recon, grid, base.with_mu(0.0)) < zero_state_threshold) {
        return {target, true, true};
    }
    auto ok = [&](double mu) {
        const RayleighParts parts = rayleigh_parts(recon, grid, base.with_mu(mu), system);
        return parts.denominator > 0.0 && parts.numerator >= target * parts.denominator;
    };
    const auto mu = scan_then_bisect(ok, cfg.mu_scan_step, cfg.mu_scan_max, cfg.bisect_tol);
    if (!mu) return {0.0, false, false};
    return {*mu, true, false};
}

double kappa_star(double mu_hat, double length, double lambda_min, double kappa_max) {
    if (!(mu_hat >= 0.0)) throw std::invalid_argument("mu_hat must be non-negative");
    if (!(lambda_min > 0.0)) throw std::invalid_argument("lambda_min must be positive");
    return std::min(std::exp(-mu_hat * length / (2.0 * lambda_min)), kappa_max);
}

double kappa_from_traces(double trace_plus_L, double trace_minus_0, const LyapunovParams& params, double kappa_max) {
    const SpeedTable& t = params.table();
    const std::size_t last = t.size() - 1;
    const Pair w0 = params.node_weights(0);
    const Pair wl = params.node_weights(last);
    const double out = wl.plus * t.lambda_plus[last] * trace_plus_L * trace_plus_L +
                       w0.minus * std::abs(t.lambda_minus[0]) * trace_minus_0 * trace_minus_0;
    const double in = w0.plus * t.lambda_plus[0] * trace_minus_0 * trace_minus_0 +
                      wl.minus * std::abs(t.lambda_minus[last]) * trace_plus_L * trace_plus_L;
    if (!(in > 0.0)) return kappa_max;
    return std::min(std::sqrt(out / in), kappa_max);
}

ControlDecision decide(const Reconstruction& recon, const Grid& grid, const LyapunovParams& base,
                       const SystemSpec& system, const ControlConfig& cfg, const ControlDecision& previous) {
    ScanResult scan;
    switch (cfg.controller) {
        case ControllerKind::MatrixEig:
            scan = mu_hat_matrix(recon, base, system, cfg.target_rate, cfg);
            break;
        case ControllerKind::Rayleigh:
            scan = mu_hat_rayleigh(recon, grid, base, system, cfg.target_rate, cfg);
            break;
        case ControllerKind::FixedMu:
            scan = {cfg.fixed_mu, true, false};
            break;
    }

    ControlDecision d;
    d.feasible = scan.feasible;
    d.zero_state = scan.zero_state;
    const double trace_plus = recon.trace_out_plus();
    const double trace_minus = recon.trace_out_minus();
    if (scan.feasible) {
        d.mu_hat = scan.mu_hat;
        const LyapunovParams params = base.with_mu(d.mu_hat);
        d.kappa_star = cfg.kappa_rule == KappaRule::NormBound
                           ? kappa_star(d.mu_hat, grid.length(), params.table().lambda_min, cfg.kappa_max)
                           : kappa_from_traces(trace_plus, trace_minus, params, cfg.kappa_max);
        d.H_value = boundary_form_H(trace_plus, trace_minus, d.kappa_star, params);
    } else {
        d.mu_hat = previous.mu_hat;
        d.kappa_star = previous.kappa_star;
        d.H_value = boundary_form_H(trace_plus, trace_minus, d.kappa_star, base.with_mu(d.mu_hat));
    }
    return d;
}

ControlDecision initial_decision(const Grid& grid, const LyapunovParams& base, const ControlConfig& cfg) {
    ControlDecision d;
    d.mu_hat = cfg.mu_scan_max;
    d.kappa_star = kappa_star(d.mu_hat, grid.length(), base.table().lambda_min, cfg.kappa_max);
    d.feasible = false;
    return d;
}

}  // namespace hypctrl
