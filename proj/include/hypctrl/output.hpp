#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypctrl/core.hpp"
#include "hypctrl/simulation.hpp"

namespace hypctrl {

inline constexpr const char* timeseries_header = "t,l2_sq,lyapunov,lyapunov_scaled,mu_hat,kappa_star,feasible";
inline constexpr const char* snapshot_header = "x,r_plus,r_minus,rho_dev,q_dev";

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, std::ostream& out);
void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, const std::string& path);
std::vector<TimeSeriesRecord> read_timeseries_csv(std::istream& in);

void write_snapshot_csv(const RiemannState& state, const Grid& grid, double gamma, std::ostream& out);
void write_snapshot_csv(const RiemannState& state, const Grid& grid, double gamma, const std::string& path);

struct DecayReport {
    double slope{0.0};               // least-squares slope of ln(lyap_scaled) against t
    double target{0.0};
    bool meets_target{false};        // slope <= -target
    double max_bound_violation{0.0}; // max(l2_sq - lyap_scaled, 0)
    bool stabilized{false};          // final l2 < initial l2 * exp(-target * t_final / 2)
    std::size_t points{0};
};

/// Throws std::invalid_argument if fewer than three records carry a positive
/// scaled Lyapunov value.
DecayReport emit_decay_report(const std::vector<TimeSeriesRecord>& records, double target);

std::ostream& operator<<(std::ostream& os, const DecayReport& r);

}  // namespace hypctrl
