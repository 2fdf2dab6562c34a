#include "hypctrl/cweno.hpp"

#include <cmath>
#include <stdexcept>

#include "hypctrl/parallel.hpp"

namespace hypctrl {

namespace {

// Quadratic in the local coordinate xi = (x - x_cell) / dx, xi in [-1/2, 1/2].
struct Quad {
    double c0{0.0}, c1{0.0}, c2{0.0};

    double operator()(double xi) const { return c0 + xi * (c1 + xi * c2); }
    Quad operator+(const Quad& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
    Quad operator-(const Quad& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
    Quad operator*(double s) const { return {s * c0, s * c1, s * c2}; }
};

// Jiang-Shu indicator sum_l dx^(2l-1) int_cell (d^l P / dx^l)^2 dx, which in
// the local coordinate is int (P')^2 + int (P'')^2 over [-1/2, 1/2].
double smoothness(const Quad& p) { return p.c1 * p.c1 + (13.0 / 3.0) * p.c2 * p.c2; }

NodeValues<double> nodes_of(const Quad& p) { return {p(-0.5), p(0.0), p(0.5)}; }

struct Blend {
    Quad p0, p1, p2;
    double beta0, beta1, beta2;
    double tau;
};

// Z-weights alpha_k = d_k (1 + tau / (beta_k + eps)), eps = dx^2.
NodeValues<double> blend(const Blend& b, double dx) {
    const double eps = dx * dx;
    const double a0 = CwenoWeights::d0 * (1.0 + b.tau / (b.beta0 + eps));
    const double a1 = CwenoWeights::d1 * (1.0 + b.tau / (b.beta1 + eps));
    const double a2 = CwenoWeights::d2 * (1.0 + b.tau / (b.beta2 + eps));
    const double sum = a0 + a1 + a2;
    const Quad p = b.p0 * (a0 / sum) + b.p1 * (a1 / sum) + b.p2 * (a2 / sum);
    return nodes_of(p);
}

// P0 = (Popt - d1 P1 - d2 P2) / d0
Quad central_part(const Quad& popt, const Quad& p1, const Quad& p2) {
    return (popt - p1 * CwenoWeights::d1 - p2 * CwenoWeights::d2) * (1.0 / CwenoWeights::d0);
}

}  // namespace

NodeValues<double> cweno3_interior(double a_minus, double a_0, double a_plus, double dx) {
    const double second = a_plus - 2.0 * a_0 + a_minus;
    const Quad popt{a_0 - second / 24.0, 0.5 * (a_plus - a_minus), 0.5 * second};
    const Quad left{a_0, a_0 - a_minus, 0.0};
    const Quad right{a_0, a_plus - a_0, 0.0};
    const Quad p0 = central_part(popt, left, right);

    const double beta_l = smoothness(left);
    const double beta_r = smoothness(right);
    return blend({p0, left, right, smoothness(p0), beta_l, beta_r, std::abs(beta_l - beta_r)}, dx);
}

NodeValues<double> cwenob_boundary(double a_1, double a_2, double a_3, double dx, Side side) {
    // Work in the frame where the boundary cell is first and the stencil runs
    // into the domain; mirror the result for the right boundary.
    double b1 = a_1;
    double b2 = a_2;
    double b3 = a_3;
    if (side == Side::Right) {
        b1 = a_3;
        b2 = a_2;
        b3 = a_1;
    }
    // Quadratic with averages b1, b2, b3 on cells centered at xi = 0, 1, 2.
    const double c2 = 0.5 * (b1 - 2.0 * b2 + b3);
    const double c1 = b2 - b1 - c2;
    const Quad popt{b1 - c2 / 12.0, c1, c2};
    const Quad near{b1, b2 - b1, 0.0};
    const Quad far{b1, b3 - b2, 0.0};
    const Quad p0 = central_part(popt, near, far);

    const double beta0 = smoothness(p0);
    const double beta_near = smoothness(near);
    const double beta_far = smoothness(far);
    NodeValues<double> v = blend({p0, near, far, beta0, beta_near, beta_far, std::abs(beta0 - beta_near)}, dx);
    if (side == Side::Right) std::swap(v.left, v.right);
    return v;
}

Reconstruction reconstruct_all(const RiemannState& state, const Grid& grid) {
    const std::size_t n = grid.cells();
    if (state.size() != n) {
        throw std::invalid_argument("state length does not match the grid");
    }
    const double dx = grid.dx();
    const auto& a = state.avg;
    Reconstruction rec;
    rec.cells.resize(n);

    auto assemble = [&rec](std::size_t j, const NodeValues<double>& p, const NodeValues<double>& m) {
        rec.cells[j] = {{p.left, m.left}, {p.center, m.center}, {p.right, m.right}};
    };

    parallel_for(n, [&](std::size_t j) {
        if (j == 0) {
            assemble(0, cwenob_boundary(a[0].plus, a[1].plus, a[2].plus, dx, Side::Left),
                     cwenob_boundary(a[0].minus, a[1].minus, a[2].minus, dx, Side::Left));
        } else if (j == n - 1) {
            assemble(j, cwenob_boundary(a[j - 2].plus, a[j - 1].plus, a[j].plus, dx, Side::Right),
                     cwenob_boundary(a[j - 2].minus, a[j - 1].minus, a[j].minus, dx, Side::Right));
        } else {
            assemble(j, cweno3_interior(a[j - 1].plus, a[j].plus, a[j + 1].plus, dx),
                     cweno3_interior(a[j - 1].minus, a[j].minus, a[j + 1].minus, dx));
        }
    });
    return rec;
}

}  // namespace hypctrl
