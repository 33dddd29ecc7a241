// Acceptance suite: one pass/fail line per criterion.
//
// Covers the analytic dispersion identities, explicit-vs-numeric minimum
// speeds, the FKPP bound, desk-scale reproduction of the speed measurements,
// non-attainability for degenerate switching, fast-switching convergence,
// reduced-coefficient structure, FKPP consistency, the leading-edge
// positivity boundary and the discrete solver invariants.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "gogrow/reduced.hpp"
#include "gogrow/solver.hpp"
#include "gogrow/waves.hpp"
#include "helpers.hpp"

using namespace gogrow;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string strf(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof buf, pattern, args);
    va_end(args);
    return buf;
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

// uniform draw from (0, 2]
double draw_gamma(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return 2.0 * (1.0 - u(rng));
}

SimulationConfig desk_config(SwitchingPair pair, ModelKind model = ModelKind::Full,
                             double t_end = 400.0, int snapshots = 40) {
    SimulationConfig cfg{std::move(pair), Grid1D::make(1000.0, 4000)};
    cfg.model = model;
    cfg.t_end = t_end;
    cfg.initial = StepInitial{0.2, 100.0};
    for (int k = 1; k <= snapshots; ++k)
        cfg.output_times.push_back(t_end * static_cast<double>(k) / snapshots);
    return cfg;
}

struct Fig1Run {
    std::string name;
    SwitchingPair pair;
    Trajectory traj;
};

// the four scenario runs, shared by criteria 8 and 10
const std::vector<Fig1Run>& fig1_runs() {
    static const std::vector<Fig1Run> runs = [] {
        const std::vector<std::pair<std::string, SwitchingPair>> defs = {
            {"fig1a", testutil::pair_fig1a()},
            {"fig1b", testutil::pair_fig1b()},
            {"fig1c", testutil::pair_fig1c()},
            {"fig1d", testutil::pair_fig1d()},
        };
        std::vector<std::future<Trajectory>> futures;
        for (const auto& def : defs) {
            futures.push_back(std::async(std::launch::async, [pair = def.second] {
                return simulate_full(desk_config(pair, ModelKind::Full, 500.0, 20));
            }));
        }
        std::vector<Fig1Run> out;
        for (std::size_t k = 0; k < defs.size(); ++k)
            out.push_back({defs[k].first, defs[k].second, futures[k].get()});
        return out;
    }();
    return runs;
}

// -----------------------------------------------------------------------------

void criterion_dispersion_identities() {
    std::mt19937 rng(987654321);
    for (int k = 0; k < 1000; ++k) {
        const double g1 = draw_gamma(rng), g2 = draw_gamma(rng);
        const double c1 = dispersion_speed(g1, g2, 1.0).c;
        require(std::abs(c1 - 1.0) <= 1e-12,
                strf("c(1) = %.17g for gamma1=%.6g gamma2=%.6g", c1, g1, g2));

        const double h = 1e-6;
        const double fd =
            (dispersion_speed(g1, g2, 1.0 + h).c - dispersion_speed(g1, g2, 1.0 - h).c) / (2.0 * h);
        const double slope = dispersion_slope_at_one(g1, g2);
        require(std::abs(fd - slope) <= 1e-5,
                strf("slope mismatch %.3g at gamma1=%.6g gamma2=%.6g", fd - slope, g1, g2));
    }
}

void criterion_explicit_vs_numeric() {
    for (double g1 : {0.1, 0.5, 1.0, 3.0}) {
        const double closed = cmin_explicit(g1, 0.0).c_min;
        const double numeric = minimize_dispersion_numeric(g1, 0.0).c_min;
        require(std::abs(numeric - closed) <= 1e-8,
                strf("gamma2=0 axis: numeric %.12g vs closed %.12g at gamma1=%g", numeric, closed,
                     g1));
    }
    for (double g2 : {0.2, 0.36, 0.9, 1.5}) {
        const double closed = cmin_explicit(0.0, g2).c_min;
        const double numeric = minimize_dispersion_numeric(0.0, g2).c_min;
        require(std::abs(numeric - closed) <= 1e-8,
                strf("gamma1=0 axis: numeric %.12g vs closed %.12g at gamma2=%g", numeric, closed,
                     g2));
    }
}

void criterion_bounded_speed() {
    constexpr int n = 50;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double g1 = 2.0 * i / (n - 1), g2 = 2.0 * j / (n - 1);
            const double c = minimize_dispersion(g1, g2).c_min;
            require(c <= 1.0 + 1e-12, strf("c_min = %.15g > 1 at (%.4g, %.4g)", c, g1, g2));
            if (i == j)
                require(std::abs(c - 1.0) <= 1e-9,
                        strf("diagonal c_min = %.15g != 1 at gamma = %.4g", c, g1));
            else
                require(c < 1.0 - 1e-12,
                        strf("off-diagonal c_min = %.15g not < 1 at (%.4g, %.4g)", c, g1, g2));
        }
    }
}

void criterion_constant_pair_speeds() {
    struct Point {
        double g1, g2;
    };
    std::vector<Point> points;
    for (double g1 : {0.25, 0.5, 1.0})
        for (double g2 : {0.5, 1.0, 2.0}) points.push_back({g1, g2});

    std::vector<std::future<std::string>> futures;
    for (const Point p : points) {
        futures.push_back(std::async(std::launch::async, [p]() -> std::string {
            const SwitchingPair pair{SwitchingFunction::constant(p.g1),
                                     SwitchingFunction::constant(p.g2)};
            const auto traj = simulate_full(desk_config(pair));
            const double measured = speed_reaction_integral(traj, pair).value;
            const double tracked = speed_front_tracking(traj, 0.1).value;
            const double predicted = minimize_dispersion(p.g1, p.g2).c_min;
            if (std::abs(measured - predicted) / predicted > 0.03)
                return strf("(%g, %g): integral %.5g vs predicted %.5g off by %.2f%%", p.g1, p.g2,
                            measured, predicted,
                            100.0 * std::abs(measured - predicted) / predicted);
            if (std::abs(tracked - measured) / measured > 0.02)
                return strf("(%g, %g): estimators disagree: front %.5g vs integral %.5g", p.g1,
                            p.g2, tracked, measured);
            return {};
        }));
    }
    for (auto& f : futures) {
        const std::string err = f.get();
        require(err.empty(), err);
    }
}

void criterion_non_attainability() {
    std::vector<std::pair<std::string, SwitchingPair>> cases;
    for (double beta : {0.5, 1.0, 1.5}) {
        cases.emplace_back(strf("linear beta=%g", beta),
                           SwitchingPair{SwitchingFunction::constant(0.5),
                                         SwitchingFunction::linear(beta)});
    }
    cases.emplace_back("hill pair", testutil::pair_fig1d());

    const double cmin = cmin_explicit(0.5, 0.0).c_min;  // all cases have Gamma1(0) = 0.5
    std::vector<std::future<double>> futures;
    for (const auto& c : cases) {
        futures.push_back(std::async(std::launch::async, [pair = c.second] {
            const auto traj = simulate_full(desk_config(pair));
            return speed_reaction_integral(traj, pair).value;
        }));
    }
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const double speed = futures[k].get();
        require(speed > cmin + 0.01,
                strf("%s: speed %.5g does not exceed c_min %.5g + 0.01", cases[k].first.c_str(),
                     speed, cmin));
        require(speed <= 1.01,
                strf("%s: speed %.5g above the FKPP bound", cases[k].first.c_str(), speed));
    }
}

void criterion_fast_switching_convergence() {
    // the degenerate hill pair needs the finer grid: the sharp reduced front
    // is otherwise under-resolved and its position bias floors the distances
    struct Study {
        const char* name;
        SwitchingPair pair;
        int n_cells;
    };
    const Study studies[] = {{"fig1a", testutil::pair_fig1a(), 3200},
                             {"fig1d", testutil::pair_fig1d(), 4000}};
    for (const auto& study : studies) {
        SimulationConfig cfg{study.pair, Grid1D::make(400.0, study.n_cells)};
        cfg.t_end = 100.0;
        cfg.initial = StepInitial{0.2, 100.0};
        const auto rep = compare_fast_switching(study.pair, {0.1, 0.05, 0.025}, cfg);
        require(rep.monotone_decreasing.has_value() && *rep.monotone_decreasing,
                strf("%s: distances %.4g, %.4g, %.4g not strictly decreasing", study.name,
                     rep.distances[0], rep.distances[1], rep.distances[2]));
    }
}

void criterion_reduced_coefficients() {
    auto pairs = testutil::figure_pairs();
    pairs.emplace_back(SwitchingFunction::constant(0.5), SwitchingFunction::linear(0.5));
    pairs.emplace_back(SwitchingFunction::hill_decay(0.5, 0.5, 2.0),
                       SwitchingFunction::hill(0.5, 0.5, 2.0));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        double prev_rate = effective_rate(pairs[p], 0.0);
        for (int k = 0; k < 1000; ++k) {
            const double rho = static_cast<double>(k) / 999.0;
            const double d = effective_diffusion(pairs[p], rho);
            require(d >= -1e-12, strf("pair %zu: D(%.4g) = %.3g < 0", p, rho, d));
            const double r = effective_rate(pairs[p], rho);
            if (k > 0)
                require(r <= prev_rate + 1e-10,
                        strf("pair %zu: r increases at rho = %.4g", p, rho));
            prev_rate = r;
        }
    }

    const auto fig1b = testutil::pair_fig1b();
    const double h = 1e-4;
    const double secant = (effective_diffusion(fig1b, h) - effective_diffusion(fig1b, 0.0)) / h;
    const double slope = small_density_slope(fig1b);
    require(std::abs(secant - slope) / slope <= 0.01,
            strf("small-density slope %.6g vs secant %.6g", slope, secant));
}

void criterion_fkpp_consistency() {
    const SwitchingPair even{SwitchingFunction::constant(1.0), SwitchingFunction::constant(1.0)};
    const auto traj = simulate_reduced(desk_config(even, ModelKind::Reduced));
    const double speed = speed_front_tracking(traj, 0.1).value;
    require(std::abs(speed - 1.0) <= 0.03,
            strf("reduced theta=1/2 front speed %.5g outside 1 +- 3%%", speed));

    for (const auto& run : fig1_runs()) {
        const auto& last = run.traj.snapshots.back();
        const std::size_t n = last.rho1.size();
        const std::size_t window = n / 20;
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < window; ++i) {
            m1 += last.rho1[i];
            m2 += last.rho2[i];
        }
        m1 /= static_cast<double>(window);
        m2 /= static_cast<double>(window);
        bool matched = false;
        for (const auto& rs : steady_states(run.pair).rear)
            matched = matched || (std::abs(rs.u1 - m1) <= 1e-2 && std::abs(rs.u2 - m2) <= 1e-2);
        require(matched, strf("%s: rear plateau (%.4g, %.4g) matches no steady state",
                              run.name.c_str(), m1, m2));
    }
}

void criterion_leading_edge_boundary() {
    for (double g1 : {0.1, 0.5, 2.0}) {
        double lo = 0.0, hi = 2.0;
        require(!leading_edge(lo, g1).positive && leading_edge(hi, g1).positive,
                "positivity flag not bracketed on [0, 2]");
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            (leading_edge(mid, g1).positive ? hi : lo) = mid;
        }
        const double flip = 0.5 * (lo + hi);
        const double closed = 1.0 / std::sqrt(1.0 + g1);
        require(std::abs(flip - closed) <= 1e-10,
                strf("gamma1=%g: flip at %.12g vs closed form %.12g", g1, flip, closed));
    }
}

void criterion_solver_invariants() {
    // switching-only mass conservation over 1000 steps
    {
        SimulationConfig cfg{testutil::pair_fig1d(), Grid1D::make(100.0, 400)};
        cfg.initial = StepInitial{0.2, 100.0 * 0.25};
        cfg.disable_proliferation = true;
        const double dt = stable_dt(cfg);
        cfg.dt = dt;
        cfg.t_end = 1000.0 * dt;
        const auto initial = make_initial(cfg.initial, cfg.grid, ModelKind::Full);
        const auto traj = simulate_full(cfg);
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t i = 0; i < initial.rho1.size(); ++i) {
            m0 += initial.total(i);
            m1 += traj.snapshots.back().total(i);
        }
        require(std::abs(m1 - m0) / m0 <= 1e-10,
                strf("switching-only mass drift %.3g", std::abs(m1 - m0) / m0));
    }

    // positivity and boundedness across the scenario runs
    for (const auto& run : fig1_runs()) {
        for (const auto& s : run.traj.snapshots) {
            for (std::size_t i = 0; i < s.rho1.size(); ++i) {
                require(s.rho1[i] >= -1e-10 && s.rho2[i] >= -1e-10,
                        strf("%s: negative density at t=%.4g", run.name.c_str(), s.time));
                require(s.total(i) <= 1.0 + 1e-6,
                        strf("%s: total density %.8g above capacity at t=%.4g", run.name.c_str(),
                             s.total(i), s.time));
            }
        }
    }

    // spatially uniform data stays uniform
    {
        SimulationConfig cfg{testutil::pair_fig1a(), Grid1D::make(50.0, 200)};
        cfg.t_end = 20.0;
        cfg.output_times = {5.0, 20.0};
        cfg.initial = CustomInitial{std::vector<double>(200, 0.3), std::vector<double>(200, 0.2)};
        const auto traj = simulate_full(cfg);
        for (const auto& s : traj.snapshots) {
            for (std::size_t i = 0; i < s.rho1.size(); ++i) {
                require(std::abs(s.rho1[i] - s.rho1[0]) <= 1e-12 &&
                            std::abs(s.rho2[i] - s.rho2[0]) <= 1e-12,
                        strf("uniform state drifted at t=%.4g", s.time));
            }
        }
    }
}

struct Criterion {
    int id;
    const char* title;
    void (*run)();
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "dispersion identities: c(1) = 1 and the slope formula", criterion_dispersion_identities},
        {2, "explicit vs numeric minimum speeds on the axes", criterion_explicit_vs_numeric},
        {3, "minimum speed bounded by 1, equality only on the diagonal", criterion_bounded_speed},
        {4, "constant-pair speed measurements match the dispersion minimum", criterion_constant_pair_speeds},
        {5, "degenerate Gamma2(0) = 0 speeds exceed c_min and stay below 1", criterion_non_attainability},
        {6, "fast-switching distances decrease with epsilon", criterion_fast_switching_convergence},
        {7, "reduced coefficients: D >= 0, r non-increasing, small-density slope", criterion_reduced_coefficients},
        {8, "FKPP front speed and scenario rear states", criterion_fkpp_consistency},
        {9, "leading-edge positivity flips at 1/sqrt(1+gamma1)", criterion_leading_edge_boundary},
        {10, "solver invariants: conservation, positivity, uniformity", criterion_solver_invariants},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty()) {
            std::printf("[PASS] %2d  %s  (%.1fs)\n", c.id, c.title, secs);
        } else {
            ++failures;
            std::printf("[FAIL] %2d  %s  (%.1fs)\n            %s\n", c.id, c.title, secs,
                        error.c_str());
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
