#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hypctrl/core.hpp"
#include "hypctrl/cweno.hpp"

namespace hypctrl {

/// Characteristic speeds and travel-time integrals tabulated on the grid
/// nodes (edges and centers). Built once per grid; independent of mu.
struct SpeedTable {
    std::vector<double> x;
    std::vector<double> lambda_plus;
    std::vector<double> lambda_minus;
    std::vector<double> travel_plus;   // int_0^x ds / lambda+(s)
    std::vector<double> travel_minus;  // int_x^L ds / |lambda-(s)|
    double lambda_min{0.0};            // min over edges of min(|lambda+|, |lambda-|)

    static SpeedTable build(const Grid& grid, const SystemSpec& system);
    std::size_t size() const { return x.size(); }
};

/// Weight parameter mu_tilde together with the cached speed table.
class LyapunovParams {
public:
    LyapunovParams(std::shared_ptr<const SpeedTable> table, double mu_tilde);
    LyapunovParams(const Grid& grid, const SystemSpec& system, double mu_tilde);

    double mu_tilde() const { return mu_; }
    const SpeedTable& table() const { return *table_; }
    LyapunovParams with_mu(double mu_tilde) const { return {table_, mu_tilde}; }

    /// (W+, W-) at grid node k.
    Pair node_weights(std::size_t k) const;

private:
    std::shared_ptr<const SpeedTable> table_;
    double mu_;
};

/// W+(x) = exp(-mu int_0^x 1/lambda+) / lambda+(x),
/// W-(x) = exp(-mu int_x^L 1/|lambda-|) / |lambda-(x)|.
Pair weights(double x, const LyapunovParams& params, const SystemSpec& system);

/// Gauss-Lobatto quadrature of R^T W R over the reconstruction.
double lyapunov_value(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params);

/// Gauss-Lobatto quadrature of |R|^2 over the reconstruction.
double l2_squared(const Reconstruction& recon, const Grid& grid);

/// Smallest weight over all grid nodes and both components.
double min_weight(const LyapunovParams& params);

/// L / W_min, an upper bound of the squared L2 norm.
double scaled_lyapunov(double lyap, const LyapunovParams& params);

/// mu W + W Gbar + Gbar^T W.
Mat2 matrix_M_tilde(const Pair& r, double x, const Pair& w, double mu_tilde, const SystemSpec& system);

/// W^{-1/2} Mtilde W^{-1/2}.
Mat2 matrix_M(const Pair& r, double x, const Pair& w, double mu_tilde, const SystemSpec& system);
Mat2 matrix_M(const Pair& r, double x, const LyapunovParams& params, const SystemSpec& system);

double min_eig_2x2(const Mat2& m);
double max_eig_2x2(const Mat2& m);

/// Boundary quadratic form of the Lyapunov derivative for the reflecting
/// control R+(0) = kappa R-(0), R-(L) = kappa R+(L). Non-positive values
/// mean the boundary does not feed energy into the system.
double boundary_form_H(double trace_plus_L, double trace_minus_0, double kappa, const LyapunovParams& params);

struct RayleighParts {
    double numerator{0.0};    // quadrature of R^T Mtilde R
    double denominator{0.0};  // quadrature of R^T W R, i.e. the Lyapunov value
    double quotient() const { return numerator / denominator; }
};

RayleighParts rayleigh_parts(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params,
                             const SystemSpec& system);

/// Global weighted Rayleigh quotient. Throws std::domain_error for a zero state.
double rayleigh_quotient(const Reconstruction& recon, const Grid& grid, const LyapunovParams& params,
                         const SystemSpec& system);

/// Pairwise summation; the reduction tree depends only on the length.
double pairwise_sum(std::span<const double> values);

}  // namespace hypctrl
