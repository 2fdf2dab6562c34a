#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hypctrl/core.hpp"

namespace hypctrl {

/// Config-file error; line() is 1-based, 0 for errors that involve several keys.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses the flat `key=value` run description. Blank lines and text after
/// `#` are ignored; missing keys keep their defaults.
///
/// Keys: scenario, L, N, cfl, t_final, output_every, initial, mu, controller
/// (matrix | rayleigh | fixed), mu_tilde, mu_scan_max, mu_scan_step,
/// bisect_tol, kappa_max, kappa_rule (norm_bound | trace), snapshot_times
/// (comma separated), output_dir.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

std::string_view to_string(ControllerKind k);

}  // namespace hypctrl
