#include "hypctrl/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypctrl {

namespace {

// Simpson integral of 1/|lambda| over [a, b].
double simpson_inverse_speed(const SpeedFn& lambda, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 *
           (1.0 / std::abs(lambda(a)) + 4.0 / std::abs(lambda(m)) + 1.0 / std::abs(lambda(b)));
}

}  // namespace

SpeedTable SpeedTable::build(const Grid& grid, const SystemSpec& system) {
    SpeedTable t;
    const std::size_t nodes = grid.node_count();
    t.x.resize(nodes);
    t.lambda_plus.resize(nodes);
    t.lambda_minus.resize(nodes);
    t.travel_plus.assign(nodes, 0.0);
    t.travel_minus.assign(nodes, 0.0);
    for (std::size_t k = 0; k < nodes; ++k) {
        t.x[k] = grid.node(k);
        t.lambda_plus[k] = system.lambda_plus(t.x[k]);
        t.lambda_minus[k] = system.lambda_minus(t.x[k]);
    }
    for (std::size_t k = 1; k < nodes; ++k) {
        t.travel_plus[k] = t.travel_plus[k - 1] + simpson_inverse_speed(system.lambda_plus, t.x[k - 1], t.x[k]);
    }
    for (std::size_t k = nodes - 1; k-- > 0;) {
        t.travel_minus[k] = t.travel_minus[k + 1] + simpson_inverse_speed(system.lambda_minus, t.x[k], t.x[k + 1]);
    }
    t.lambda_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nodes; k += 2) {
        t.lambda_min = std::min({t.lambda_min, std::abs(t.lambda_plus[k]), std::abs(t.lambda_minus[k])});
    }
    return t;
}

LyapunovParams::LyapunovParams(std::shared_ptr<const SpeedTable> table, double mu_tilde)
    : table_(std::move(table)), mu_(mu_tilde) {
    if (!table_) throw std::invalid_argument("speed table is required");
    if (!(mu_tilde >= 0.0)) throw std::invalid_argument("mu_tilde must be non-negative");
}

LyapunovParams::LyapunovParams(const Grid& grid, const SystemSpec& system, double mu_tilde)
    : LyapunovParams(std::make_shared<const SpeedTable>(SpeedTable::build(grid, system)), mu_tilde) {}

Pair LyapunovParams::node_weights(std::size_t k) const {
    const SpeedTable& t = *table_;
    return {std::exp(-mu_ * t.travel_plus[k]) / t.lambda_plus[k],
            std::exp(-mu_ * t.travel_minus[k]) / std::abs(t.lambda_minus[k])};
}

Pair weights(double x, const LyapunovParams& params, const SystemSpec& system) {
    const SpeedTable& t = params.table();
    const double h = t.x[1] - t.x[0];
    const double length = t.x.back();
    if (x < 0.0 || x > length) throw std::out_of_range("weights: x outside [0, L]");
    const auto k = std::min(static_cast<std::size_t>(x / h), t.size() - 1);
    const double base = t.x[k];
    const double partial_plus = simpson_inverse_speed(system.lambda_plus, base, x);
    const double partial_minus = simpson_inverse_speed(system.lambda_minus, base, x);
    const double ip = t.travel_plus[k] + partial_plus;
    const double im = t.travel_minus[k] - partial_minus;
    const double mu = params.mu_tilde();
    return {std::exp(-mu * ip) / system.lambda_plus(x), std::exp(-mu * im) / std::abs(system.lambda_minus(x))};
}

namespace {

template <typename NodeFn>
double gauss_lobatto_sum(const Reconstruction& recon, const Grid& grid, NodeFn&& f) {
    const std::size_t n = recon.size();
    std::vector<double> cell(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& v = recon.cells[j];
        cell[j] = f(v.left, 2 * j) + 4.0 * f(v.center, 2 * j + 1) + f(v.right, 2 * j + 2);
    }
    return grid.dx() / 6.0 * pairwise_sum(cell);
}

double weighted_sq(const Pair& r, const Pair& w) { return w.plus * r.plus * r.plus + w.minus * r.minus * r.minus; }

}  // namespace

double lyapunov_value(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params) {
    return gauss_lobatto_sum(recon, grid,
                             [&](const Pair& r, std::size_t k) { return weighted_sq(r, params.node_weights(k)); });
}

double l2_squared(const Reconstruction& recon, const Grid& grid) {
    return gauss_lobatto_sum(recon, grid, [](const Pair& r, std::size_t) { return norm_sq(r); });
}

double min_weight(const LyapunovParams& params) {
    double wmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < params.table().size(); ++k) {
        const Pair w = params.node_weights(k);
        wmin = std::min({wmin, w.plus, w.minus});
    }
    return wmin;
}

double scaled_lyapunov(double lyap, const LyapunovParams& params) {
    if (!(lyap >= 0.0)) throw std::invalid_argument("Lyapunov value must be non-negative");
    return lyap / min_weight(params);
}

Mat2 matrix_M_tilde(const Pair& r, double x, const Pair& w, double mu_tilde, const SystemSpec& system) {
    const Mat2 g = system.source_matrix(r, x);
    // W G + G^T W with W = diag(w+, w-)
    const double off = w.plus * g.a01 + g.a10 * w.minus;
    return {mu_tilde * w.plus + 2.0 * w.plus * g.a00, off, off, mu_tilde * w.minus + 2.0 * w.minus * g.a11};
}

Mat2 matrix_M(const Pair& r, double x, const Pair& w, double mu_tilde, const SystemSpec& system) {
    const Mat2 mt = matrix_M_tilde(r, x, w, mu_tilde, system);
    const double sp = 1.0 / std::sqrt(w.plus);
    const double sm = 1.0 / std::sqrt(w.minus);
    const double off = mt.a01 * sp * sm;
    return {mt.a00 * sp * sp, off, off, mt.a11 * sm * sm};
}

Mat2 matrix_M(const Pair& r, double x, const LyapunovParams& params, const SystemSpec& system) {
    return matrix_M(r, x, weights(x, params, system), params.mu_tilde(), system);
}

namespace {

void require_symmetric(const Mat2& m) {
    const double scale = std::max({std::abs(m.a00), std::abs(m.a01), std::abs(m.a10), std::abs(m.a11)});
    if (std::abs(m.a01 - m.a10) > 1e-12 * scale) {
        throw std::invalid_argument("eigenvalue solve requires a symmetric matrix");
    }
}

}  // namespace

double min_eig_2x2(const Mat2& m) {
    require_symmetric(m);
    const double mean = 0.5 * (m.a00 + m.a11);
    const double half_diff = 0.5 * (m.a00 - m.a11);
    return mean - std::hypot(half_diff, m.a01);
}

double max_eig_2x2(const Mat2& m) {
    require_symmetric(m);
    const double mean = 0.5 * (m.a00 + m.a11);
    const double half_diff = 0.5 * (m.a00 - m.a11);
    return mean + std::hypot(half_diff, m.a01);
}

double boundary_form_H(double trace_plus_L, double trace_minus_0, double kappa, const LyapunovParams& params) {
    const SpeedTable& t = params.table();
    const std::size_t last = t.size() - 1;
    const Pair w0 = params.node_weights(0);
    const Pair wl = params.node_weights(last);
    // Incoming energy: R+(0) = kappa R-_0 and R-(L) = kappa R+_L.
    const double in_plus = kappa * trace_minus_0;
    const double in_minus = kappa * trace_plus_L;
    const double incoming =
        w0.plus * t.lambda_plus[0] * in_plus * in_plus + wl.minus * std::abs(t.lambda_minus[last]) * in_minus * in_minus;
    const double outgoing = wl.plus * t.lambda_plus[last] * trace_plus_L * trace_plus_L +
                            w0.minus * std::abs(t.lambda_minus[0]) * trace_minus_0 * trace_minus_0;
    return incoming - outgoing;
}

RayleighParts rayleigh_parts(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params,
                             const SystemSpec& system) {
    const std::size_t n = recon.size();
    const double mu = params.mu_tilde();
    const SpeedTable& t = params.table();
    std::vector<double> num(n), den(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& v = recon.cells[j];
        const Pair* nodes[3] = {&v.left, &v.center, &v.right};
        constexpr double wq[3] = {1.0, 4.0, 1.0};
        double sn = 0.0;
        double sd = 0.0;
        for (int q = 0; q < 3; ++q) {
            const std::size_t k = 2 * j + static_cast<std::size_t>(q);
            const Pair w = params.node_weights(k);
            const Pair& r = *nodes[q];
            const Mat2 mt = matrix_M_tilde(r, t.x[k], w, mu, system);
            sn += wq[q] * dot(r, mt * r);
            sd += wq[q] * weighted_sq(r, w);
        }
        num[j] = sn;
        den[j] = sd;
    }
    const double scale = grid.dx() / 6.0;
    return {scale * pairwise_sum(num), scale * pairwise_sum(den)};
}

double rayleigh_quotient(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params,
                         const SystemSpec& system) {
    const RayleighParts parts = rayleigh_parts(recon, grid, params, system);
    if (!(parts.denominator > 0.0)) throw std::domain_error("Rayleigh quotient undefined for the zero state");
    return parts.quotient();
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace hypctrl
