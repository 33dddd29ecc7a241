#include "gogrow/waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>

namespace gogrow {

namespace {

void require_gammas(double gamma1, double gamma2) {
    if (!std::isfinite(gamma1) || gamma1 < 0.0 || !std::isfinite(gamma2) || gamma2 < 0.0)
        throw DomainError("dispersion: gamma1 and gamma2 must be finite and nonnegative");
}

// Golden-section minimization on [a, b]; tolerance is relative in sigma.
template <class F>
double golden_min(F&& fn, double a, double b, double rel_tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < 300 && (b - a) > rel_tol * 0.5 * (a + b); ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

double bisect_root(const SwitchingFunction& g, double a, double b) {
    double fa = g(a);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, b); ++it) {
        const double m = 0.5 * (a + b);
        const double fm = g(m);
        if (fm == 0.0) return m;
        if ((fa > 0.0) == (fm > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

double trapezoid(const std::vector<double>& g, double dx) {
    if (g.size() < 2) return 0.0;
    double s = 0.5 * (g.front() + g.back());
    for (std::size_t i = 1; i + 1 < g.size(); ++i) s += g[i];
    return s * dx;
}

struct MeanSpread {
    double mean = 0.0;
    double stddev = 0.0;
};

MeanSpread mean_spread(const std::vector<double>& v) {
    MeanSpread out;
    if (v.empty()) return out;
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(v.size()));
    return out;
}

bool relative_spread_small(double stddev, double mean) {
    if (mean == 0.0) return stddev == 0.0;
    return stddev / std::abs(mean) < 0.01;
}

// Snapshot indices forming the last third of the run's time span (at least
// `min_count` of the final snapshots when the window is too thin).
std::vector<std::size_t> last_third_window(const std::vector<GridState>& snaps,
                                           std::size_t min_count) {
    const double t0 = snaps.front().time;
    const double t1 = snaps.back().time;
    const double cut = t1 - (t1 - t0) / 3.0;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < snaps.size(); ++k)
        if (snaps[k].time >= cut - 1e-12) idx.push_back(k);
    while (idx.size() < std::min(min_count, snaps.size())) {
        idx.insert(idx.begin(), idx.empty() ? snaps.size() - 1 : idx.front() - 1);
        if (idx.front() == 0) break;
    }
    return idx;
}

// Rightmost level crossing of the total density; the front position.
std::optional<double> front_position(const GridState& s, const Grid1D& grid, double threshold) {
    const auto n = s.rho1.size();
    if (n == 0) return std::nullopt;
    if (s.total(n - 1) >= threshold) return grid.center(static_cast<int>(n) - 1);
    for (std::size_t i = n - 1; i-- > 0;) {
        const double gi = s.total(i);
        if (gi >= threshold) {
            const double gn = s.total(i + 1);  // < threshold
            const double frac = (gi - threshold) / (gi - gn);
            return grid.center(static_cast<int>(i)) + frac * grid.dx;
        }
    }
    return std::nullopt;
}

}  // namespace

DispersionPoint dispersion_speed(double gamma1, double gamma2, double sigma) {
    require_gammas(gamma1, gamma2);
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw DomainError("dispersion: sigma must be positive and finite");

    const double f = sigma + (1.0 - gamma1 - gamma2) / sigma;
    // f^2 - 4(1-gamma2) + 4 gamma1/sigma^2 rewritten as a sum of squares
    const double u = sigma - (1.0 + gamma1 - gamma2) / sigma;
    const double disc = u * u + 4.0 * gamma1 * gamma2 / (sigma * sigma);
    if (disc < 0.0) throw NumericalError("dispersion: negative discriminant");
    return {sigma, f, 0.5 * (f + std::sqrt(disc))};
}

double dispersion_slope_at_one(double gamma1, double gamma2) {
    require_gammas(gamma1, gamma2);
    if (gamma1 + gamma2 <= 0.0)
        throw DomainError("dispersion slope: gamma1 + gamma2 must be positive");
    return (gamma2 - gamma1) / (gamma1 + gamma2);
}

DispersionMinimum cmin_explicit(double gamma1, double gamma2) {
    require_gammas(gamma1, gamma2);
    if (gamma1 > 0.0 && gamma2 > 0.0)
        throw NotApplicableError("cmin_explicit needs gamma1 = 0 or gamma2 = 0");
    if (gamma2 == 0.0) {
        const double s = std::sqrt(1.0 + gamma1);
        return {s, 1.0 / s, MinimizeMethod::Explicit, true};
    }
    // gamma1 = 0: c(sigma) = max(sigma, (1-gamma2)/sigma)
    if (gamma2 < 1.0) {
        const double s = std::sqrt(1.0 - gamma2);
        return {s, s, MinimizeMethod::Explicit, true};
    }
    // gamma2 >= 1: c(sigma) = sigma, infimum 0 as sigma -> 0+ (not attained;
    // the boundary case gamma2 = 1 is reported the same way by continuity).
    return {0.0, 0.0, MinimizeMethod::Explicit, false};
}

DispersionMinimum minimize_dispersion_numeric(double gamma1, double gamma2) {
    require_gammas(gamma1, gamma2);

    double lo = 1e-3, hi = 1e3;
    constexpr int kPoints = 600;
    const auto speed = [&](double s) { return dispersion_speed(gamma1, gamma2, s).c; };

    for (;;) {
        // log-spaced scan, with sigma = 1 pinned so c_min <= c(1) = 1 always
        std::vector<double> sigmas;
        sigmas.reserve(kPoints + 1);
        const double step = std::log(hi / lo) / (kPoints - 1);
        for (int k = 0; k < kPoints; ++k) sigmas.push_back(lo * std::exp(step * k));
        sigmas.push_back(1.0);
        std::sort(sigmas.begin(), sigmas.end());

        std::size_t best = 0;
        double cbest = speed(sigmas[0]);
        for (std::size_t k = 1; k < sigmas.size(); ++k) {
            const double c = speed(sigmas[k]);
            if (c < cbest) {
                cbest = c;
                best = k;
            }
        }

        if (best == 0 && lo > 1e-12) {
            lo = std::max(lo * 1e-3, 1e-12);
            continue;
        }
        if (best == sigmas.size() - 1 && hi < 1e12) {
            hi = std::min(hi * 1e3, 1e12);
            continue;
        }
        if (best == 0 || best == sigmas.size() - 1) {
            // infimum at the search edge: report the endpoint with a warning flag
            return {sigmas[best], cbest, MinimizeMethod::Numeric, false};
        }
        const double s = golden_min(speed, sigmas[best - 1], sigmas[best + 1], 1e-10);
        return {s, speed(s), MinimizeMethod::Numeric, true};
    }
}

DispersionMinimum minimize_dispersion(double gamma1, double gamma2) {
    require_gammas(gamma1, gamma2);
    if (gamma1 == 0.0 || gamma2 == 0.0) return cmin_explicit(gamma1, gamma2);
    return minimize_dispersion_numeric(gamma1, gamma2);
}

double fkpp_cmin(double theta) {
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("fkpp_cmin: theta must lie in (0,1)");
    return 2.0 * std::sqrt(theta * (1.0 - theta));
}

LeadingEdge leading_edge(double c, double gamma1) {
    if (!std::isfinite(c) || c < 0.0)
        throw DomainError("leading_edge: c must be nonnegative and finite");
    if (!std::isfinite(gamma1) || gamma1 < 0.0)
        throw DomainError("leading_edge: gamma1 must be nonnegative and finite");
    const double lambda = 0.5 * (c + std::sqrt(c * c + 4.0 * gamma1));
    const double margin = c * lambda - 1.0;
    // strictly positive beyond roundoff: the algebraic boundary
    // c = 1/sqrt(1+gamma1) has margin exactly 0 and must report false
    const bool positive = margin > 1e-12;
    // away from the boundary both characterizations must agree
    if (std::abs(margin) > 1e-9 && positive != (c > 1.0 / std::sqrt(1.0 + gamma1)))
        throw NumericalError("leading_edge: positivity cross-check failed");
    return {c, lambda, positive};
}

SteadyStateSet steady_states(const SwitchingPair& pair) {
    const auto& G1 = pair.gamma1;
    const auto& G2 = pair.gamma2;
    SteadyStateSet out;

    // root of Gamma1 on [1e-6, 1] -> proliferation-extinct rear (U*, 0)
    std::optional<double> root;
    constexpr int kScan = 2048;
    double xa = 1e-6, ga = G1(xa);
    if (ga == 0.0) root = xa;
    for (int k = 1; k <= kScan && !root; ++k) {
        const double xb = 1e-6 + (1.0 - 1e-6) * static_cast<double>(k) / kScan;
        const double gb = G1(xb);
        if (gb == 0.0)
            root = xb;
        else if ((ga > 0.0) != (gb > 0.0))
            root = bisect_root(G1, xa, xb);
        xa = xb;
        ga = gb;
    }
    if (root) out.rear.push_back({*root, 0.0, RearKind::ExtinctProliferation});

    const double g11 = G1(1.0);
    if (g11 > 0.0) {
        const double g21 = G2(1.0);
        const double s = g11 + g21;
        if (s <= 0.0)
            throw InvalidPairError("steady_states: Gamma1(1) + Gamma2(1) <= 0 in the coexistence branch");
        out.rear.push_back({g21 / s, g11 / s, RearKind::Coexistence});
    }
    return out;
}

SpeedEstimate speed_reaction_integral(const Trajectory& traj, const SwitchingPair& pair) {
    if (traj.model != ModelKind::Full)
        throw NotApplicableError("reaction-integral speed requires a full-model trajectory");
    if (traj.snapshots.empty()) throw DomainError("reaction-integral speed: empty trajectory");

    const auto& grid = traj.grid;
    const auto n = static_cast<std::size_t>(grid.n_cells);
    const auto window = last_third_window(traj.snapshots, 1);

    std::vector<double> integrand(n), estimates;
    estimates.reserve(window.size());
    for (std::size_t k : window) {
        const GridState& s = traj.snapshots[k];
        for (std::size_t i = 0; i < n; ++i)
            integrand[i] = s.rho2[i] * (1.0 - s.rho1[i] - s.rho2[i]);
        estimates.push_back(trapezoid(integrand, grid.dx));
    }
    const auto ms = mean_spread(estimates);

    SpeedEstimate est;
    est.value = ms.mean;
    est.method = SpeedMethod::ReactionIntegral;
    est.window_begin = traj.snapshots[window.front()].time;
    est.window_end = traj.snapshots[window.back()].time;
    est.dispersion_stddev = ms.stddev;
    est.converged = relative_spread_small(ms.stddev, ms.mean);

    const GridState& last = traj.snapshots.back();

    // measurement is contaminated once the front feels the right boundary
    const auto fp = front_position(last, grid, 1e-3);
    if (fp && *fp > 0.9 * grid.length) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "reaction-integral speed: front at x = %g within 10%% of the right boundary (L = %g)",
                      *fp, grid.length);
        throw NumericalError(buf);
    }

    // rear checks on the left 10% / 5% of the domain
    const std::size_t tenth = std::max<std::size_t>(1, n / 10);
    double lo = last.total(0), hi = lo;
    for (std::size_t i = 0; i < tenth; ++i) {
        const double v = last.total(i);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    est.rear_settled = (hi - lo) <= 1e-4;

    const std::size_t twentieth = std::max<std::size_t>(1, n / 20);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < twentieth; ++i) {
        m1 += last.rho1[i];
        m2 += last.rho2[i];
    }
    m1 /= static_cast<double>(twentieth);
    m2 /= static_cast<double>(twentieth);
    est.rear_matches_steady_state = false;
    for (const auto& rs : steady_states(pair).rear) {
        if (std::abs(rs.u1 - m1) <= 1e-2 && std::abs(rs.u2 - m2) <= 1e-2) {
            est.rear_matches_steady_state = true;
            break;
        }
    }
    return est;
}

SpeedEstimate speed_front_tracking(const Trajectory& traj, double threshold) {
    if (traj.snapshots.size() < 3)
        throw DomainError("front-tracking speed needs at least 3 snapshots");
    if (!std::isfinite(threshold) || threshold <= 0.0)
        throw DomainError("front-tracking speed: threshold must be positive");

    const auto window = last_third_window(traj.snapshots, 2);
    std::vector<double> ts, xs;
    for (std::size_t k : window) {
        const auto x = front_position(traj.snapshots[k], traj.grid, threshold);
        if (!x) throw NumericalError("front-tracking speed: threshold never crossed");
        ts.push_back(traj.snapshots[k].time);
        xs.push_back(*x);
    }

    // least-squares slope of x_front(t)
    const auto m = static_cast<double>(ts.size());
    const double tbar = std::accumulate(ts.begin(), ts.end(), 0.0) / m;
    const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    double stt = 0.0, stx = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - tbar) * (ts[k] - tbar);
        stx += (ts[k] - tbar) * (xs[k] - xbar);
    }
    if (stt == 0.0) throw DomainError("front-tracking speed: degenerate time window");
    const double slope = stx / stt;

    std::vector<double> pair_speeds;
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
        pair_speeds.push_back((xs[k + 1] - xs[k]) / (ts[k + 1] - ts[k]));
    const auto ms = mean_spread(pair_speeds);

    SpeedEstimate est;
    est.value = slope;
    est.method = SpeedMethod::FrontTracking;
    est.window_begin = ts.front();
    est.window_end = ts.back();
    est.dispersion_stddev = ms.stddev;
    est.converged = relative_spread_small(ms.stddev, slope);
    return est;
}

}  // namespace gogrow
