#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypctrl {

// Value of the two Riemann invariants (or any quantity attached to the two
// characteristic families): `plus` travels right, `minus` travels left.
struct Pair {
    double plus{0.0};
    double minus{0.0};

    constexpr Pair& operator+=(const Pair& o) {
        plus += o.plus;
        minus += o.minus;
        return *this;
    }
    constexpr Pair& operator-=(const Pair& o) {
        plus -= o.plus;
        minus -= o.minus;
        return *this;
    }
    constexpr Pair& operator*=(double s) {
        plus *= s;
        minus *= s;
        return *this;
    }
    friend constexpr Pair operator+(Pair a, const Pair& b) { return a += b; }
    friend constexpr Pair operator-(Pair a, const Pair& b) { return a -= b; }
    friend constexpr Pair operator*(double s, Pair a) { return a *= s; }
    friend constexpr Pair operator*(Pair a, double s) { return a *= s; }
    friend constexpr bool operator==(const Pair&, const Pair&) = default;
};

constexpr double dot(const Pair& a, const Pair& b) { return a.plus * b.plus + a.minus * b.minus; }
constexpr double norm_sq(const Pair& a) { return dot(a, a); }

// Dense 2x2 matrix, row major.
struct Mat2 {
    double a00{0.0}, a01{0.0};
    double a10{0.0}, a11{0.0};

    constexpr Pair operator*(const Pair& r) const {
        return {a00 * r.plus + a01 * r.minus, a10 * r.plus + a11 * r.minus};
    }
    constexpr Mat2 transposed() const { return {a00, a10, a01, a11}; }
    friend constexpr Mat2 operator*(double s, const Mat2& m) {
        return {s * m.a00, s * m.a01, s * m.a10, s * m.a11};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Uniform partition of [0, L] into N cells. Node k = 0..2N sits at k*dx/2:
/// even nodes are cell edges, odd nodes are cell centers.
class Grid {
public:
    Grid(double length, std::size_t cells);

    double length() const { return length_; }
    std::size_t cells() const { return cells_; }
    double dx() const { return dx_; }

    /// Center of cell j (0-based).
    double center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dx_; }
    /// Edge k = 0..N, edge(k) = k*dx.
    double edge(std::size_t k) const { return static_cast<double>(k) * dx_; }
    std::size_t node_count() const { return 2 * cells_ + 1; }
    double node(std::size_t k) const { return 0.5 * static_cast<double>(k) * dx_; }

    std::vector<double> centers() const;
    std::vector<double> edges() const;

private:
    double length_;
    std::size_t cells_;
    double dx_;
};

Grid build_grid(double length, std::size_t cells);

/// Cell averages of the deviation from the steady state.
struct RiemannState {
    std::vector<Pair> avg;
    double t{0.0};

    std::size_t size() const { return avg.size(); }
    bool all_finite() const;
};

using SpeedFn = std::function<double(double)>;
using SourceFn = std::function<Pair(const Pair&, double)>;
using SourceMatrixFn = std::function<Mat2(const Pair&, double)>;

/// Diagonal 2x2 semilinear balance law in Riemann invariants:
///   d_t R + Lambda(x) d_x R = -G(R; x),   G(R; x) = Gbar(R; x) R.
struct SystemSpec {
    SpeedFn lambda_plus;
    SpeedFn lambda_minus;
    SpeedFn dlambda_plus_dx;
    SpeedFn dlambda_minus_dx;
    SourceFn source;
    SourceMatrixFn source_matrix;
    std::optional<double> lipschitz_C;
    bool source_is_linear{false};

    /// Checks the sign condition on the speeds at the grid nodes, G(0)=0 and
    /// the factorization G = Gbar R at a few sample points. Throws on failure.
    void validate(const Grid& grid) const;
};

struct BoundarySpec {
    double kappa{0.0};
    double kappa_max{1.0};

    BoundarySpec() = default;
    BoundarySpec(double kappa, double kappa_max);
};

enum class ControllerKind { MatrixEig, Rayleigh, FixedMu };

/// How kappa* is derived from mu_hat.
enum class KappaRule {
    NormBound,  // exp(-mu L / (2 lambda_min)) from the uniform norm bound
    Trace       // largest kappa with H(traces; kappa) <= 0 at the current traces
};

struct ControlConfig {
    double target_rate{1.0};
    ControllerKind controller{ControllerKind::MatrixEig};
    double fixed_mu{0.0};
    double mu_scan_max{64.0};
    double mu_scan_step{1e-2};
    double bisect_tol{1e-6};
    double kappa_max{1.0};
    KappaRule kappa_rule{KappaRule::NormBound};

    void validate() const;
};

enum class InitialData { SinCos, Step, Zero, Bump };

struct RunConfig {
    std::string scenario{"linear"};
    double length{1.0};
    std::size_t cells{32};
    double cfl{0.45};
    double t_final{10.0};
    std::size_t output_every{1};
    InitialData initial{InitialData::SinCos};
    ControlConfig control{};
    std::vector<double> snapshot_times{0.0, 2.0, 5.0, 10.0};
    std::string output_dir{"."};

    void validate() const;
};

/// Density and mass flux carried by a pair of Riemann invariants,
/// rho = r+ + r-, q = gamma (r+ - r-).
Pair density_flux(const Pair& r, double gamma);

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hypctrl
