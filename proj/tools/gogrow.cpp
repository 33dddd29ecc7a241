// gogrow: batch front-end for the go-or-grow invasion model.
//
// Subcommands: simulate, reduced-coefficients, dispersion, speed, sweep,
// compare-limit.  Outputs are CSV (plus JSON summaries and optional SVG
// plots) under --out; identical configs produce bit-identical files.
// Exit codes: 0 success, 1 config error, 2 numerical failure.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gogrow/config.hpp"
#include "gogrow/csv.hpp"
#include "gogrow/reduced.hpp"
#include "gogrow/solver.hpp"
#include "gogrow/svg.hpp"
#include "gogrow/waves.hpp"

namespace {

using namespace gogrow;
using ordered_json = nlohmann::ordered_json;

struct GlobalOpts {
    std::filesystem::path out = ".";
    bool paper_scale = false;
    int workers = 1;
};

std::filesystem::path out_path(const GlobalOpts& g, const std::string& name) {
    std::filesystem::create_directories(g.out);
    return g.out / name;
}

void run_indexed(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const auto count = static_cast<std::size_t>(workers);
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::string sanitize_csv(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n' || c == '"') c = ';';
    return s;
}

const char* method_name(MinimizeMethod m) {
    return m == MinimizeMethod::Explicit ? "explicit" : "numeric";
}

ordered_json speed_to_json(const SpeedEstimate& e) {
    ordered_json j;
    j["method"] = e.method == SpeedMethod::ReactionIntegral ? "reaction_integral" : "front_tracking";
    j["value"] = e.value;
    j["window"] = {e.window_begin, e.window_end};
    j["dispersion_stddev"] = e.dispersion_stddev;
    j["converged"] = e.converged;
    if (e.method == SpeedMethod::ReactionIntegral) {
        j["rear_settled"] = e.rear_settled;
        j["rear_matches_steady_state"] = e.rear_matches_steady_state;
    }
    return j;
}

ordered_json minimum_to_json(const DispersionMinimum& m) {
    ordered_json j;
    j["sigma_star"] = m.sigma_star;
    j["c_min"] = m.c_min;
    j["method"] = method_name(m.method);
    j["attained"] = m.attained;
    return j;
}

void write_profile_plot(const Trajectory& traj, const std::string& title,
                        const std::filesystem::path& path) {
    svg::LinePlot plot(title, "x", "total density");
    std::vector<double> xs(static_cast<std::size_t>(traj.grid.n_cells));
    for (int i = 0; i < traj.grid.n_cells; ++i)
        xs[static_cast<std::size_t>(i)] = traj.grid.center(i);
    for (const auto& s : traj.snapshots) {
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = s.total(i);
        plot.add_series("t=" + csv::format(s.time), xs, ys);
    }
    plot.write(path);
}

// ---------------------------------------------------------------------------
// simulate

void cmd_simulate(const GlobalOpts& g, const std::string& config, bool plot) {
    const SimulateJob job = load_simulate_job(config, g.paper_scale);
    const bool full = job.sim.model == ModelKind::Full;
    const Trajectory traj = full ? simulate_full(job.sim) : simulate_reduced(job.sim);

    const auto traj_path = out_path(g, job.trajectory_csv);
    csv::write_trajectory(traj, traj_path);

    const auto& pair = job.sim.pair;
    ordered_json summary;
    summary["name"] = job.name;
    summary["model"] = full ? "full" : "reduced";
    summary["pair"] = pair_to_json(pair);
    summary["grid"] = {{"length", traj.grid.length}, {"n_cells", traj.grid.n_cells}};
    summary["t_end"] = job.sim.t_end;

    const SteadyStateSet ss = steady_states(pair);
    ordered_json rear = ordered_json::array();
    for (const auto& r : ss.rear) {
        rear.push_back({{"u1", r.u1},
                        {"u2", r.u2},
                        {"kind", r.kind == RearKind::Coexistence ? "coexistence"
                                                                 : "extinct_proliferation"}});
    }
    summary["steady_states"] = {{"front", {0.0, 0.0}}, {"rear", rear}};
    summary["dispersion_minimum"] =
        minimum_to_json(minimize_dispersion(pair.gamma1_at_zero(), pair.gamma2_at_zero()));

    ordered_json speeds;
    if (full) {
        try {
            speeds["reaction_integral"] = speed_to_json(speed_reaction_integral(traj, pair));
        } catch (const Error& e) {
            speeds["reaction_integral"] = {{"error", e.what()}};
        }
    }
    try {
        speeds["front_tracking"] = speed_to_json(speed_front_tracking(traj, 0.1));
    } catch (const Error& e) {
        speeds["front_tracking"] = {{"error", e.what()}};
    }
    summary["speeds"] = speeds;

    if (pair.gamma1.is_constant() && pair.gamma2.is_constant()) {
        try {
            const double theta = fkpp_theta(pair);
            summary["fkpp"] = {{"theta", theta}, {"c_min", fkpp_cmin(theta)}};
        } catch (const NotApplicableError&) {
        }
    }

    const auto summary_path = out_path(g, job.summary_json);
    std::ofstream out(summary_path);
    out << summary.dump(2) << '\n';
    if (!out) throw ConfigError("error while writing " + summary_path.string());

    if (plot) write_profile_plot(traj, job.name, out_path(g, job.name + ".svg"));

    std::cout << "wrote " << traj_path.string() << " and " << summary_path.string() << '\n';
}

// ---------------------------------------------------------------------------
// reduced-coefficients

void cmd_reduced_coefficients(const GlobalOpts& g, const std::string& config, int samples,
                              double rho_max, std::string csv_name) {
    const SwitchingPair pair = load_pair_only(config);
    if (samples < 2) throw ConfigError("reduced-coefficients: --samples must be >= 2");
    if (!(rho_max > 0.0)) throw ConfigError("reduced-coefficients: --rho-max must be positive");
    if (csv_name.empty())
        csv_name = std::filesystem::path(config).stem().string() + "_coefficients.csv";

    const auto path = out_path(g, csv_name);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "rho,D,r\n";
    for (int k = 0; k < samples; ++k) {
        const double rho = rho_max * static_cast<double>(k) / (samples - 1);
        out << csv::format(rho) << ',' << csv::format(effective_diffusion(pair, rho)) << ','
            << csv::format(effective_rate(pair, rho)) << '\n';
    }
    std::cout << "wrote " << path.string() << '\n';
}

// ---------------------------------------------------------------------------
// dispersion

struct SigmaGrid {
    double lo = 0.05, hi = 5.0;
    int n = 200;
};

SigmaGrid parse_sigma_grid(const std::string& s) {
    SigmaGrid grid;
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("--sigma-grid expects lo:hi:n");
    try {
        grid.lo = std::stod(s.substr(0, c1));
        grid.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        grid.n = std::stoi(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("--sigma-grid expects lo:hi:n with numeric fields");
    }
    if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || grid.n < 2)
        throw ConfigError("--sigma-grid needs 0 < lo < hi and n >= 2");
    return grid;
}

void cmd_dispersion(const GlobalOpts& g, double gamma1, double gamma2, const std::string& grid_str,
                    std::string csv_name, bool plot) {
    const SigmaGrid grid = grid_str.empty() ? SigmaGrid{} : parse_sigma_grid(grid_str);
    if (csv_name.empty()) csv_name = "dispersion.csv";

    std::vector<double> sigmas(static_cast<std::size_t>(grid.n)), speeds(sigmas.size());
    const auto path = out_path(g, csv_name);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "sigma,c\n";
    for (int k = 0; k < grid.n; ++k) {
        const double sigma = grid.lo + (grid.hi - grid.lo) * static_cast<double>(k) / (grid.n - 1);
        const auto pt = dispersion_speed(gamma1, gamma2, sigma);
        sigmas[static_cast<std::size_t>(k)] = sigma;
        speeds[static_cast<std::size_t>(k)] = pt.c;
        out << csv::format(sigma) << ',' << csv::format(pt.c) << '\n';
    }

    const DispersionMinimum m = minimize_dispersion(gamma1, gamma2);
    std::cout << "sigma_star=" << csv::format(m.sigma_star) << " c_min=" << csv::format(m.c_min)
              << " method=" << method_name(m.method) << (m.attained ? "" : " (infimum)") << '\n';

    if (plot) {
        svg::LinePlot p("dispersion relation", "sigma", "c");
        p.add_series("c(sigma)", sigmas, speeds);
        p.add_series("c_min", {sigmas.front(), sigmas.back()}, {m.c_min, m.c_min});
        p.write(out_path(g, "dispersion.svg"));
    }
}

// ---------------------------------------------------------------------------
// speed

void write_speed_header(std::ostream& out) {
    out << "method,value,window_begin,window_end,dispersion_stddev,converged\n";
}

void write_speed_row(std::ostream& out, const SpeedEstimate& e) {
    out << (e.method == SpeedMethod::ReactionIntegral ? "reaction_integral" : "front_tracking")
        << ',' << csv::format(e.value) << ',' << csv::format(e.window_begin) << ','
        << csv::format(e.window_end) << ',' << csv::format(e.dispersion_stddev) << ','
        << (e.converged ? "true" : "false") << '\n';
}

void cmd_speed(const GlobalOpts& g, const std::string& traj_file, const std::string& config,
               std::string method, double threshold, std::string csv_name) {
    const Trajectory traj = csv::read_trajectory(traj_file);
    if (method.empty()) method = traj.model == ModelKind::Full ? "both" : "front";
    if (csv_name.empty()) csv_name = "speed.csv";

    std::vector<SpeedEstimate> estimates;
    if (method == "integral" || method == "both") {
        if (config.empty())
            throw ConfigError("speed: the reaction-integral method needs --config for the pair");
        estimates.push_back(speed_reaction_integral(traj, load_pair_only(config)));
    }
    if (method == "front" || method == "both")
        estimates.push_back(speed_front_tracking(traj, threshold));
    if (estimates.empty())
        throw ConfigError("speed: --method must be 'integral', 'front' or 'both'");

    const auto path = out_path(g, csv_name);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    write_speed_header(out);
    write_speed_header(std::cout);
    for (const auto& e : estimates) {
        write_speed_row(out, e);
        write_speed_row(std::cout, e);
    }
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
    double p1 = 0.0, p2 = 0.0;
    double measured = std::nan(""), front = std::nan("");
    double predicted = std::nan(""), ratio = std::nan("");
    std::string status = "ok";
};

void cmd_sweep(const GlobalOpts& g, const std::string& config, bool plot) {
    const SweepJob job = load_sweep_job(config, g.paper_scale);

    struct Point {
        double p1, p2;
    };
    std::vector<Point> points;
    for (double p1 : job.gamma1_values)
        for (double p2 : job.second_values) points.push_back({p1, p2});

    std::vector<SweepRow> rows(points.size());
    run_indexed(points.size(), g.workers, [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.p1 = points[i].p1;
        row.p2 = points[i].p2;
        try {
            const SwitchingPair pair = make_sweep_pair(job, row.p1, row.p2);
            SimulationConfig cfg = job.base;
            cfg.pair = pair;
            const Trajectory traj = simulate_full(cfg);
            row.measured = speed_reaction_integral(traj, pair).value;
            row.front = speed_front_tracking(traj, 0.1).value;
            const auto m = minimize_dispersion(pair.gamma1_at_zero(), pair.gamma2_at_zero());
            row.predicted = m.c_min;
            row.ratio = row.measured / row.predicted;
        } catch (const std::exception& e) {
            row.status = sanitize_csv(e.what());
        }
    });

    const char* p2_name = job.kind == SweepKind::Constant ? "gamma2" : "beta";
    const auto path = out_path(g, job.table_csv);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "gamma1," << p2_name << ",c_measured,c_front_tracking,c_min_predicted,ratio,status\n";
    for (const auto& r : rows) {
        out << csv::format(r.p1) << ',' << csv::format(r.p2) << ',' << csv::format(r.measured)
            << ',' << csv::format(r.front) << ',' << csv::format(r.predicted) << ','
            << csv::format(r.ratio) << ',' << r.status << '\n';
    }
    std::cout << "wrote " << path.string() << '\n';

    if (plot) {
        svg::LinePlot p(job.name, p2_name, "wave speed");
        for (double p1 : job.gamma1_values) {
            std::vector<double> xs, measured, predicted;
            for (const auto& r : rows) {
                if (r.p1 != p1) continue;
                xs.push_back(r.p2);
                measured.push_back(r.measured);
                predicted.push_back(r.predicted);
            }
            p.add_series("measured g1=" + csv::format(p1), xs, measured);
            p.add_series("c_min g1=" + csv::format(p1), xs, predicted);
        }
        p.write(out_path(g, job.name + ".svg"));
    }
}

// ---------------------------------------------------------------------------
// compare-limit

void cmd_compare_limit(const GlobalOpts& g, const std::string& config) {
    const CompareLimitJob job = load_compare_limit_job(config, g.paper_scale);
    const ConvergenceReport rep =
        compare_fast_switching(job.base.pair, job.epsilons, job.base);

    const auto path = out_path(g, job.table_csv);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "epsilon,sup_distance\n";
    for (std::size_t k = 0; k < rep.epsilons.size(); ++k)
        out << csv::format(rep.epsilons[k]) << ',' << csv::format(rep.distances[k]) << '\n';

    std::cout << "wrote " << path.string();
    if (rep.monotone_decreasing)
        std::cout << " (distances " << (*rep.monotone_decreasing ? "strictly decreasing" : "NOT monotone")
                  << ")";
    std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"go-or-grow cell invasion: PDE simulation and travelling-wave analysis"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "output directory for generated files")->capture_default_str();
    app.add_flag("--paper-scale", g.paper_scale,
                 "escalate runs to the large domain (L = 7000, t_end = 6500)");
    app.add_option("--workers", g.workers, "concurrent workers for sweep points")
        ->capture_default_str();

    std::string sim_config;
    bool sim_plot = false;
    auto* sim = app.add_subcommand("simulate", "run a model and write trajectory + summary");
    sim->add_option("config", sim_config, "JSON run configuration")->required();
    sim->add_flag("--plot", sim_plot, "also write an SVG profile plot");

    std::string coef_config, coef_csv;
    int coef_samples = 1001;
    double coef_rho_max = 1.0;
    auto* coef = app.add_subcommand("reduced-coefficients",
                                    "dump the effective D(rho), r(rho) of a pair as CSV");
    coef->add_option("config", coef_config, "config file containing the pair")->required();
    coef->add_option("--samples", coef_samples, "number of rho samples")->capture_default_str();
    coef->add_option("--rho-max", coef_rho_max, "upper end of the rho range")
        ->capture_default_str();
    coef->add_option("--csv", coef_csv, "output CSV filename");

    double disp_g1 = 0.0, disp_g2 = 0.0;
    std::string disp_grid, disp_csv;
    bool disp_plot = false;
    auto* disp = app.add_subcommand("dispersion", "tabulate c(sigma) and report its minimum");
    disp->add_option("--gamma1", disp_g1, "leading-edge rate Gamma1(0)")->required();
    disp->add_option("--gamma2", disp_g2, "leading-edge rate Gamma2(0)")->required();
    disp->add_option("--sigma-grid", disp_grid, "sigma sample grid as lo:hi:n (default 0.05:5:200)");
    disp->add_option("--csv", disp_csv, "output CSV filename");
    disp->add_flag("--plot", disp_plot, "also write an SVG of the curve");

    std::string speed_traj, speed_config, speed_method, speed_csv;
    double speed_threshold = 0.1;
    auto* spd = app.add_subcommand("speed", "estimate the wave speed of a stored trajectory");
    spd->add_option("--trajectory", speed_traj, "trajectory CSV from 'simulate'")->required();
    spd->add_option("--config", speed_config, "config with the pair (reaction integral)");
    spd->add_option("--method", speed_method, "integral | front | both");
    spd->add_option("--threshold", speed_threshold, "front-tracking level")->capture_default_str();
    spd->add_option("--csv", speed_csv, "output CSV filename");

    std::string sweep_config;
    bool sweep_plot = false;
    auto* swp = app.add_subcommand("sweep", "measured vs predicted speeds over a parameter grid");
    swp->add_option("config", sweep_config, "JSON sweep configuration")->required();
    swp->add_flag("--plot", sweep_plot, "also write an SVG of the sweep");

    std::string limit_config;
    auto* lim = app.add_subcommand("compare-limit",
                                   "fast-switching convergence: full model vs reduction");
    lim->add_option("config", limit_config, "JSON compare-limit configuration")->required();

    try {
        app.parse(argc, argv);
        if (sim->parsed()) cmd_simulate(g, sim_config, sim_plot);
        if (coef->parsed())
            cmd_reduced_coefficients(g, coef_config, coef_samples, coef_rho_max, coef_csv);
        if (disp->parsed()) cmd_dispersion(g, disp_g1, disp_g2, disp_grid, disp_csv, disp_plot);
        if (spd->parsed())
            cmd_speed(g, speed_traj, speed_config, speed_method, speed_threshold, speed_csv);
        if (swp->parsed()) cmd_sweep(g, sweep_config, sweep_plot);
        if (lim->parsed()) cmd_compare_limit(g, limit_config);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
