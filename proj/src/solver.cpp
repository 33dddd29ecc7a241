#include "gogrow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

namespace gogrow {

namespace {

// Rates stay physical under small density overshoot (linear_decay and
// hill_decay can dip below zero for rho > 1); analysis code uses the raw
// formulas, only the time stepper clamps.
inline double clamped_rate(const SwitchingFunction& g, double rho) {
    return std::max(0.0, g(rho));
}

struct StepPlan {
    long n;
    double h;
};

// Subdivide [t0, t1] into equal steps no longer than dt_target so output
// times are hit exactly.
StepPlan plan_steps(double t0, double t1, double dt_target) {
    const double span = t1 - t0;
    if (span <= 0.0) return {0, 0.0};
    const auto n = std::max(1L, static_cast<long>(std::ceil(span / dt_target - 1e-9)));
    return {n, span / static_cast<double>(n)};
}

void check_sane(const GridState& s, double t) {
    auto scan = [t](const std::vector<double>& v, const char* name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!std::isfinite(v[i]) || std::abs(v[i]) > 10.0) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "solver instability: %s[%zu] = %g at t = %g",
                              name, i, v[i], t);
                throw NumericalError(buf);
            }
        }
    };
    scan(s.rho1, "rho1");
    if (!s.rho2.empty()) scan(s.rho2, "rho2");
}

std::vector<double> resolve_output_times(const SimulationConfig& cfg) {
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end))
        throw ConfigError("t_end must be nonnegative and finite");
    std::vector<double> times = cfg.output_times;
    if (times.empty()) times.push_back(cfg.t_end);
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || times[k] > cfg.t_end * (1.0 + 1e-12) + 1e-12)
            throw ConfigError("output_times must lie within [0, t_end]");
        if (k > 0 && times[k] <= times[k - 1])
            throw ConfigError("output_times must be strictly increasing");
    }
    return times;
}

double gamma_sum_max(const SwitchingPair& pair) {
    double m = 0.0;
    for (int k = 0; k <= 1024; ++k) {
        const double rho = 1.05 * static_cast<double>(k) / 1024.0;
        m = std::max(m, clamped_rate(pair.gamma1, rho) + clamped_rate(pair.gamma2, rho));
    }
    return m;
}

double resolve_dt(const SimulationConfig& cfg) {
    const double dt = cfg.dt.value_or(stable_dt(cfg));
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
    return dt;
}

}  // namespace

double stable_dt(const SimulationConfig& cfg) {
    constexpr double kSafety = 0.4;
    const double dx2 = cfg.grid.dx * cfg.grid.dx;
    double bound;
    if (cfg.model == ModelKind::Full) {
        bound = std::min(dx2 / 2.0, 1.0);  // unit diffusion, unit logistic rate
        if (cfg.scheme == TimeScheme::Explicit) {
            const double gmax = gamma_sum_max(cfg.pair) / cfg.pair.epsilon;
            if (gmax > 0.0) bound = std::min(bound, 1.0 / gmax);
        }
    } else {
        const CoefficientTable table(cfg.pair, 1.05, cfg.table_samples);
        bound = std::numeric_limits<double>::infinity();
        if (table.max_diffusion() > 0.0) bound = dx2 / (2.0 * table.max_diffusion());
        if (table.max_rate() > 0.0) bound = std::min(bound, 1.0 / table.max_rate());
        if (!std::isfinite(bound)) bound = cfg.t_end > 0.0 ? cfg.t_end : 1.0;  // inert system
    }
    return kSafety * bound;
}

Trajectory simulate_full(const SimulationConfig& cfg) {
    if (cfg.model != ModelKind::Full)
        throw ConfigError("simulate_full called with a reduced-model config");
    validate_pair(cfg.pair, 256);
    const auto times = resolve_output_times(cfg);
    const double dt_target = resolve_dt(cfg);

    const int n = cfg.grid.n_cells;
    const double dx2 = cfg.grid.dx * cfg.grid.dx;
    const double inv_eps = 1.0 / cfg.pair.epsilon;
    const auto& G1 = cfg.pair.gamma1;
    const auto& G2 = cfg.pair.gamma2;
    const bool grow = !cfg.disable_proliferation;

    GridState state = make_initial(cfg.initial, cfg.grid, ModelKind::Full);
    std::vector<double> next1(static_cast<std::size_t>(n)), next2(static_cast<std::size_t>(n));

    // One forward-Euler step of diffusion + logistic growth, optionally with
    // the switching exchange included.  The exchange term enters both
    // equations with opposite sign, so summed cell mass is untouched by
    // switching at the discrete level.
    auto step_reaction_diffusion = [&](double h, bool with_switching) {
        const auto& r1 = state.rho1;
        const auto& r2 = state.rho2;
        for (int i = 0; i < n; ++i) {
            const double c1 = r1[static_cast<std::size_t>(i)];
            const double c2 = r2[static_cast<std::size_t>(i)];
            const double left = r1[static_cast<std::size_t>(i == 0 ? 0 : i - 1)];
            const double right = r1[static_cast<std::size_t>(i == n - 1 ? n - 1 : i + 1)];
            const double lap = (left - 2.0 * c1 + right) / dx2;
            const double rho = c1 + c2;
            double sw = 0.0;
            if (with_switching)
                sw = (c1 * clamped_rate(G1, rho) - c2 * clamped_rate(G2, rho)) * inv_eps;
            const double growth = grow ? c2 * (1.0 - rho) : 0.0;
            next1[static_cast<std::size_t>(i)] = c1 + h * (lap - sw);
            next2[static_cast<std::size_t>(i)] = c2 + h * (growth + sw);
        }
        state.rho1.swap(next1);
        state.rho2.swap(next2);
    };

    // Exact per-cell integration of the switching subsystem: rho is conserved
    // within a cell, so the rates are frozen and the phenotype split relaxes
    // exponentially to the equilibrium fractions.
    auto relax_switching = [&](double h) {
        auto& r1 = state.rho1;
        auto& r2 = state.rho2;
        for (int i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            const double rho = r1[u] + r2[u];
            const double g1 = clamped_rate(G1, rho) * inv_eps;
            const double g2 = clamped_rate(G2, rho) * inv_eps;
            const double s = g1 + g2;
            if (s <= 0.0) continue;
            const double eq1 = g2 * rho / s;
            const double w = std::exp(-s * h);
            r1[u] = eq1 + (r1[u] - eq1) * w;
            r2[u] = rho - r1[u];
        }
    };

    Trajectory traj{ModelKind::Full, cfg.grid, {}};
    traj.snapshots.reserve(times.size());
    double t = 0.0;
    for (double t_out : times) {
        const auto plan = plan_steps(t, t_out, dt_target);
        for (long k = 0; k < plan.n; ++k) {
            if (cfg.scheme == TimeScheme::Explicit) {
                step_reaction_diffusion(plan.h, true);
            } else {
                relax_switching(0.5 * plan.h);
                step_reaction_diffusion(plan.h, false);
                relax_switching(0.5 * plan.h);
            }
        }
        t = t_out;
        state.time = t;
        check_sane(state, t);
        traj.snapshots.push_back(state);
    }
    return traj;
}

Trajectory simulate_reduced(const SimulationConfig& cfg) {
    if (cfg.model != ModelKind::Reduced)
        throw ConfigError("simulate_reduced called with a full-model config");
    validate_pair(cfg.pair, 256);
    const auto times = resolve_output_times(cfg);
    const double dt_target = resolve_dt(cfg);

    const int n = cfg.grid.n_cells;
    const double dx2 = cfg.grid.dx * cfg.grid.dx;
    const CoefficientTable table(cfg.pair, 1.05, cfg.table_samples);
    const bool grow = !cfg.disable_proliferation;

    GridState state = make_initial(cfg.initial, cfg.grid, ModelKind::Reduced);
    std::vector<double> diff(static_cast<std::size_t>(n)), next(static_cast<std::size_t>(n));

    // Conservative form: face diffusivity is the arithmetic mean of the two
    // adjacent cell values; boundary faces carry zero flux.  Coefficient
    // lookups clamp tiny negative densities (positivity holds to solver
    // tolerance only).
    auto step = [&](double h) {
        auto& rho = state.rho1;
        for (int i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            diff[u] = table.diffusion(std::max(rho[u], 0.0));
        }
        for (int i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            const double flux_r =
                i == n - 1 ? 0.0 : 0.5 * (diff[u] + diff[u + 1]) * (rho[u + 1] - rho[u]);
            const double flux_l =
                i == 0 ? 0.0 : 0.5 * (diff[u - 1] + diff[u]) * (rho[u] - rho[u - 1]);
            const double transport = (flux_r - flux_l) / dx2;
            const double growth = grow ? table.rate(std::max(rho[u], 0.0)) * rho[u] : 0.0;
            next[u] = rho[u] + h * (transport + growth);
        }
        rho.swap(next);
    };

    Trajectory traj{ModelKind::Reduced, cfg.grid, {}};
    traj.snapshots.reserve(times.size());
    double t = 0.0;
    for (double t_out : times) {
        const auto plan = plan_steps(t, t_out, dt_target);
        for (long k = 0; k < plan.n; ++k) step(plan.h);
        t = t_out;
        state.time = t;
        check_sane(state, t);
        traj.snapshots.push_back(state);
    }
    return traj;
}

ConvergenceReport compare_fast_switching(const SwitchingPair& pair,
                                         const std::vector<double>& eps_list,
                                         const SimulationConfig& config) {
    if (eps_list.empty()) throw DomainError("compare_fast_switching: empty epsilon list");
    for (std::size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0) || !std::isfinite(eps_list[k]))
            throw DomainError("compare_fast_switching: epsilons must be positive");
        if (k > 0 && eps_list[k] >= eps_list[k - 1])
            throw DomainError("compare_fast_switching: epsilon list must be decreasing");
    }

    SimulationConfig base = config;
    base.pair = pair;
    base.output_times = {config.t_end};

    // the reduced reference and the per-epsilon runs are independent
    SimulationConfig reduced_cfg = base;
    reduced_cfg.model = ModelKind::Reduced;
    auto reduced_future =
        std::async(std::launch::async, [&reduced_cfg] { return simulate_reduced(reduced_cfg); });

    std::vector<std::future<Trajectory>> full_futures;
    full_futures.reserve(eps_list.size());
    for (double eps : eps_list) {
        full_futures.push_back(std::async(std::launch::async, [&base, &pair, eps] {
            SimulationConfig full_cfg = base;
            full_cfg.model = ModelKind::Full;
            full_cfg.pair = SwitchingPair(pair.gamma1, pair.gamma2, eps);
            return simulate_full(full_cfg);
        }));
    }

    const Trajectory reduced = reduced_future.get();
    const GridState& target = reduced.snapshots.back();

    ConvergenceReport rep;
    rep.epsilons = eps_list;
    rep.distances.reserve(eps_list.size());
    for (auto& f : full_futures)
        rep.distances.push_back(sup_distance_total(f.get().snapshots.back(), target));
    if (rep.distances.size() >= 2) {
        bool mono = true;
        for (std::size_t k = 1; k < rep.distances.size(); ++k)
            if (!(rep.distances[k] < rep.distances[k - 1])) mono = false;
        rep.monotone_decreasing = mono;
    }
    return rep;
}

}  // namespace gogrow
