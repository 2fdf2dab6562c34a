#include "hypctrl/core.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace hypctrl {

Grid::Grid(double length, std::size_t cells) : length_(length), cells_(cells), dx_(0.0) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("grid length must be positive and finite");
    }
    if (cells < 4) {
        throw std::invalid_argument("grid needs at least 4 cells, got " + std::to_string(cells));
    }
    dx_ = length / static_cast<double>(cells);
}

std::vector<double> Grid::centers() const {
    std::vector<double> out(cells_);
    for (std::size_t j = 0; j < cells_; ++j) out[j] = center(j);
    return out;
}

std::vector<double> Grid::edges() const {
    std::vector<double> out(cells_ + 1);
    for (std::size_t k = 0; k <= cells_; ++k) out[k] = edge(k);
    return out;
}

Grid build_grid(double length, std::size_t cells) { return Grid(length, cells); }

bool RiemannState::all_finite() const {
    for (const auto& p : avg) {
        if (!std::isfinite(p.plus) || !std::isfinite(p.minus)) return false;
    }
    return std::isfinite(t);
}

void SystemSpec::validate(const Grid& grid) const {
    if (!lambda_plus || !lambda_minus || !source || !source_matrix) {
        throw std::invalid_argument("system spec is missing speed or source callbacks");
    }
    for (std::size_t k = 0; k < grid.node_count(); ++k) {
        const double x = grid.node(k);
        if (!(lambda_plus(x) > 0.0) || !(lambda_minus(x) < 0.0)) {
            std::ostringstream msg;
            msg << "characteristic speeds must satisfy lambda+ > 0 > lambda- (violated at x=" << x << ")";
            throw std::invalid_argument(msg.str());
        }
        const Pair g0 = source({0.0, 0.0}, x);
        if (g0.plus != 0.0 || g0.minus != 0.0) {
            throw std::invalid_argument("source must vanish at the zero deviation");
        }
    }
    constexpr std::array<Pair, 4> samples{{{0.3, -0.7}, {1.1, 0.4}, {-2.0, 0.5}, {0.01, 0.02}}};
    for (const auto& r : samples) {
        const double x = 0.37 * grid.length();
        const Pair g = source(r, x);
        const Pair gm = source_matrix(r, x) * r;
        const double scale = std::max({1.0, std::abs(g.plus), std::abs(g.minus)});
        if (std::abs(g.plus - gm.plus) > 1e-12 * scale || std::abs(g.minus - gm.minus) > 1e-12 * scale) {
            throw std::invalid_argument("source does not match source_matrix * r");
        }
    }
}

BoundarySpec::BoundarySpec(double k, double kmax) : kappa(k), kappa_max(kmax) {
    if (!(kmax >= 0.0 && kmax <= 1.0)) throw std::invalid_argument("kappa_max must lie in [0, 1]");
    if (!(k >= 0.0 && k <= kmax)) throw std::invalid_argument("kappa must lie in [0, kappa_max]");
}

void ControlConfig::validate() const {
    if (!(target_rate > 0.0)) throw std::invalid_argument("target decay rate must be positive");
    if (!(bisect_tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");
    if (!(mu_scan_step > bisect_tol)) throw std::invalid_argument("mu scan step must exceed the bisection tolerance");
    if (!(mu_scan_max >= mu_scan_step)) throw std::invalid_argument("mu scan range is empty");
    if (!(fixed_mu >= 0.0)) throw std::invalid_argument("fixed mu must be non-negative");
    if (!(kappa_max >= 0.0 && kappa_max <= 1.0)) throw std::invalid_argument("kappa_max must lie in [0, 1]");
}

void RunConfig::validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
    if (cells < 4) throw std::invalid_argument("at least 4 cells are required");
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (output_every == 0) throw std::invalid_argument("output_every must be at least 1");
    control.validate();
}

Pair density_flux(const Pair& r, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    return {r.plus + r.minus, gamma * (r.plus - r.minus)};
}

}  // namespace hypctrl
