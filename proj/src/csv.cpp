#include "gogrow/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace gogrow::csv {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t lineno) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) {
        throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                          ": cannot parse number '" + s + "'");
    }
    return v;
}

}  // namespace

std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    const bool full = traj.model == ModelKind::Full;
    out << (full ? "t,x,rho1,rho2,rho_total\n" : "t,x,rho\n");
    for (const auto& s : traj.snapshots) {
        for (int i = 0; i < traj.grid.n_cells; ++i) {
            const auto u = static_cast<std::size_t>(i);
            out << format(s.time) << ',' << format(traj.grid.center(i));
            if (full) {
                out << ',' << format(s.rho1[u]) << ',' << format(s.rho2[u]) << ','
                    << format(s.rho1[u] + s.rho2[u]);
            } else {
                out << ',' << format(s.rho1[u]);
            }
            out << '\n';
        }
    }
    if (!out) throw ConfigError("error while writing " + path.string());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty trajectory file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    bool full;
    if (line == "t,x,rho1,rho2,rho_total")
        full = true;
    else if (line == "t,x,rho")
        full = false;
    else
        throw ConfigError(path.string() + ": unrecognized trajectory header '" + line + "'");

    Trajectory traj;
    traj.model = full ? ModelKind::Full : ModelKind::Reduced;

    std::vector<double> xs;
    GridState current;
    bool have_time = false;
    std::size_t lineno = 1;

    auto flush = [&]() {
        if (!have_time) return;
        if (!traj.snapshots.empty() && traj.snapshots.back().rho1.size() != current.rho1.size())
            throw ConfigError(path.string() + ": snapshots have inconsistent cell counts");
        traj.snapshots.push_back(std::move(current));
        current = GridState{};
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        const std::size_t expected = full ? 5 : 3;
        if (fields.size() != expected)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected " + std::to_string(expected) + " columns");
        const double t = parse_double(fields[0], path, lineno);
        const double x = parse_double(fields[1], path, lineno);
        if (!have_time || t != current.time) {
            flush();
            current.time = t;
            have_time = true;
        }
        if (traj.snapshots.empty()) xs.push_back(x);
        current.rho1.push_back(parse_double(fields[2], path, lineno));
        if (full) current.rho2.push_back(parse_double(fields[3], path, lineno));
    }
    flush();

    if (traj.snapshots.empty() || xs.empty())
        throw ConfigError(path.string() + ": no data rows");
    if (xs.size() == 1) {
        traj.grid = Grid1D::make(std::max(2.0 * xs[0], 1e-12), 1);
    } else {
        const double dx = xs[1] - xs[0];
        if (!(dx > 0.0))
            throw ConfigError(path.string() + ": x column must be strictly increasing");
        traj.grid = Grid1D::make(dx * static_cast<double>(xs.size()), static_cast<int>(xs.size()));
    }
    return traj;
}

}  // namespace gogrow::csv
