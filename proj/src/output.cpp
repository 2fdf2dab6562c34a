#include "hypctrl/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hypctrl {

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("cannot format number");
    return {buf, ptr};
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

void check_written(std::ostream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path);
}

double parse_field(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("malformed CSV field '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, std::ostream& out) {
    out << timeseries_header << '\n';
    for (const auto& r : records) {
        out << format_double(r.t) << ',' << format_double(r.l2_sq) << ',' << format_double(r.lyap) << ','
            << format_double(r.lyap_scaled) << ',' << format_double(r.mu_hat) << ',' << format_double(r.kappa_star)
            << ',' << (r.feasible ? "true" : "false") << '\n';
    }
}

void write_timeseries_csv(const std::vector<TimeSeriesRecord>& records, const std::string& path) {
    auto out = open_for_write(path);
    write_timeseries_csv(records, out);
    check_written(out, path);
}

std::vector<TimeSeriesRecord> read_timeseries_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != timeseries_header) {
        throw std::runtime_error("unexpected time series header");
    }
    std::vector<TimeSeriesRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest = line;
        for (;;) {
            const auto c = rest.find(',');
            f.push_back(rest.substr(0, c));
            if (c == std::string_view::npos) break;
            rest = rest.substr(c + 1);
        }
        if (f.size() != 7) throw std::runtime_error("expected 7 fields, got " + std::to_string(f.size()));
        TimeSeriesRecord r;
        r.t = parse_field(f[0]);
        r.l2_sq = parse_field(f[1]);
        r.lyap = parse_field(f[2]);
        r.lyap_scaled = parse_field(f[3]);
        r.mu_hat = parse_field(f[4]);
        r.kappa_star = parse_field(f[5]);
        if (f[6] == "true") {
            r.feasible = true;
        } else if (f[6] == "false") {
            r.feasible = false;
        } else {
            throw std::runtime_error("malformed feasible flag '" + std::string(f[6]) + "'");
        }
        out.push_back(r);
    }
    return out;
}

void write_snapshot_csv(const RiemannState& state, const Grid& grid, double gamma, std::ostream& out) {
    if (state.size() != grid.cells()) throw std::invalid_argument("snapshot state does not match the grid");
    out << snapshot_header << '\n';
    for (std::size_t j = 0; j < grid.cells(); ++j) {
        const Pair& r = state.avg[j];
        const Pair rq = density_flux(r, gamma);
        out << format_double(grid.center(j)) << ',' << format_double(r.plus) << ',' << format_double(r.minus) << ','
            << format_double(rq.plus) << ',' << format_double(rq.minus) << '\n';
    }
}

void write_snapshot_csv(const RiemannState& state, const Grid& grid, double gamma, const std::string& path) {
    auto out = open_for_write(path);
    write_snapshot_csv(state, grid, gamma, out);
    check_written(out, path);
}

DecayReport emit_decay_report(const std::vector<TimeSeriesRecord>& records, double target) {
    DecayReport rep;
    rep.target = target;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (const auto& r : records) {
        rep.max_bound_violation = std::max(rep.max_bound_violation, r.l2_sq - r.lyap_scaled);
        if (!(r.lyap_scaled > 0.0)) continue;
        const double y = std::log(r.lyap_scaled);
        st += r.t;
        sy += y;
        stt += r.t * r.t;
        sty += r.t * y;
        ++rep.points;
    }
    if (rep.points < 3) throw std::invalid_argument("decay report needs three records with positive Lyapunov values");
    const double n = static_cast<double>(rep.points);
    const double denom = n * stt - st * st;
    if (!(denom > 0.0)) throw std::invalid_argument("decay report needs records at distinct times");
    rep.slope = (n * sty - st * sy) / denom;
    rep.meets_target = rep.slope <= -target;
    const auto& first = records.front();
    const auto& last = records.back();
    rep.stabilized = last.l2_sq < first.l2_sq * std::exp(-target * (last.t - first.t) / 2.0);
    return rep;
}

std::ostream& operator<<(std::ostream& os, const DecayReport& r) {
    os << "log-slope of scaled Lyapunov function: " << r.slope << " (target -" << r.target << ", "
       << (r.meets_target ? "met" : "not met") << ")\n"
       << "max violation of L2 <= scaled Lyapunov: " << r.max_bound_violation << '\n'
       << "stabilized: " << (r.stabilized ? "yes" : "no") << " (" << r.points << " points)\n";
    return os;
}

}  // namespace hypctrl
