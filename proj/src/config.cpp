#include "hypctrl/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hypctrl/scenarios.hpp"

namespace hypctrl {

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view v, std::size_t line, std::string_view key) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(line, "cannot parse '" + std::string(v) + "' as a number for " + std::string(key));
    }
    return out;
}

std::size_t parse_count(std::string_view v, std::size_t line, std::string_view key) {
    unsigned long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(line, "cannot parse '" + std::string(v) + "' as a count for " + std::string(key));
    }
    return static_cast<std::size_t>(out);
}

void require(bool ok, std::size_t line, std::string_view key, std::string_view rule) {
    if (!ok) throw ConfigError(line, std::string(key) + " out of range: " + std::string(rule));
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key=value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view val = trim(line.substr(eq + 1));

        if (key == "scenario") {
            try {
                (void)make_scenario(val);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line_no, e.what());
            }
            cfg.scenario = std::string(val);
        } else if (key == "L") {
            cfg.length = parse_double(val, line_no, key);
            require(cfg.length > 0.0, line_no, key, "L > 0");
        } else if (key == "N") {
            cfg.cells = parse_count(val, line_no, key);
            require(cfg.cells >= 4, line_no, key, "N >= 4");
        } else if (key == "cfl") {
            cfg.cfl = parse_double(val, line_no, key);
            require(cfg.cfl > 0.0 && cfg.cfl < 1.0, line_no, key, "0 < cfl < 1");
        } else if (key == "t_final") {
            cfg.t_final = parse_double(val, line_no, key);
            require(cfg.t_final > 0.0, line_no, key, "t_final > 0");
        } else if (key == "output_every") {
            cfg.output_every = parse_count(val, line_no, key);
            require(cfg.output_every >= 1, line_no, key, "output_every >= 1");
        } else if (key == "initial") {
            try {
                cfg.initial = initial_data_from_string(val);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line_no, e.what());
            }
        } else if (key == "mu") {
            cfg.control.target_rate = parse_double(val, line_no, key);
            require(cfg.control.target_rate > 0.0, line_no, key, "mu > 0");
        } else if (key == "controller") {
            if (val == "matrix") {
                cfg.control.controller = ControllerKind::MatrixEig;
            } else if (val == "rayleigh") {
                cfg.control.controller = ControllerKind::Rayleigh;
            } else if (val == "fixed") {
                cfg.control.controller = ControllerKind::FixedMu;
            } else {
                throw ConfigError(line_no, "controller must be matrix, rayleigh or fixed");
            }
        } else if (key == "mu_tilde") {
            cfg.control.fixed_mu = parse_double(val, line_no, key);
            require(cfg.control.fixed_mu >= 0.0, line_no, key, "mu_tilde >= 0");
        } else if (key == "mu_scan_max") {
            cfg.control.mu_scan_max = parse_double(val, line_no, key);
            require(cfg.control.mu_scan_max > 0.0, line_no, key, "mu_scan_max > 0");
        } else if (key == "mu_scan_step") {
            cfg.control.mu_scan_step = parse_double(val, line_no, key);
            require(cfg.control.mu_scan_step > 0.0, line_no, key, "mu_scan_step > 0");
        } else if (key == "bisect_tol") {
            cfg.control.bisect_tol = parse_double(val, line_no, key);
            require(cfg.control.bisect_tol > 0.0, line_no, key, "bisect_tol > 0");
        } else if (key == "kappa_max") {
            cfg.control.kappa_max = parse_double(val, line_no, key);
            require(cfg.control.kappa_max >= 0.0 && cfg.control.kappa_max <= 1.0, line_no, key, "0 <= kappa_max <= 1");
        } else if (key == "kappa_rule") {
            if (val == "norm_bound") {
                cfg.control.kappa_rule = KappaRule::NormBound;
            } else if (val == "trace") {
                cfg.control.kappa_rule = KappaRule::Trace;
            } else {
                throw ConfigError(line_no, "kappa_rule must be norm_bound or trace");
            }
        } else if (key == "snapshot_times") {
            cfg.snapshot_times.clear();
            std::string_view rest = val;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const std::string_view item = trim(rest.substr(0, comma));
                if (!item.empty()) {
                    const double t = parse_double(item, line_no, key);
                    require(t >= 0.0, line_no, key, "snapshot times >= 0");
                    cfg.snapshot_times.push_back(t);
                }
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        } else if (key == "output_dir") {
            cfg.output_dir = std::string(val);
        } else {
            throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string_view to_string(ControllerKind k) {
    switch (k) {
        case ControllerKind::MatrixEig: return "matrix";
        case ControllerKind::Rayleigh: return "rayleigh";
        case ControllerKind::FixedMu: return "fixed";
    }
    return "matrix";
}

}  // namespace hypctrl
