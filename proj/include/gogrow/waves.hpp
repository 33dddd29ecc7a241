#pragma once
// Travelling-wave analysis for the two-population invasion model.
//
// Linearizing about the leading edge with profiles ~ exp(-sigma z) gives the
// dispersion relation
//
//     c(sigma) = ( f(sigma) + sqrt(f(sigma)^2 - 4(1-gamma2) + 4 gamma1/sigma^2) ) / 2,
//     f(sigma) = sigma + (1 - gamma1 - gamma2) / sigma,
//
// where gamma_i = Gamma_i(0).  Its minimum over sigma > 0 is the candidate
// minimum wave speed; c(1) = 1 for every admissible (gamma1, gamma2), so the
// minimum never exceeds the FKPP reference speed.  Closed forms exist on the
// axes gamma1 = 0 and gamma2 = 0; elsewhere the minimum is located
// numerically.  When Gamma2(0) = 0 the minimum speed is not attainable:
// positivity of the leading-edge profile forces c * lambda(c) - 1 > 0 with
// lambda(c) = (c + sqrt(c^2 + 4 gamma1)) / 2.

#include <vector>

#include "gogrow/grid.hpp"
#include "gogrow/switching.hpp"

namespace gogrow {

struct DispersionPoint {
    double sigma;
    double f;  // sigma + (1 - gamma1 - gamma2) / sigma
    double c;
};

/// Evaluates the dispersion relation at decay rate sigma > 0 ("+" root).
/// The discriminant is computed via the cancellation-free identity
/// (sigma - (1+gamma1-gamma2)/sigma)^2 + 4 gamma1 gamma2 / sigma^2.
DispersionPoint dispersion_speed(double gamma1, double gamma2, double sigma);

/// dc/dsigma at sigma = 1, which equals (gamma2 - gamma1) / (gamma1 + gamma2).
double dispersion_slope_at_one(double gamma1, double gamma2);

enum class MinimizeMethod { Explicit, Numeric };

struct DispersionMinimum {
    double sigma_star;
    double c_min;
    MinimizeMethod method;
    // False when the infimum is not attained at an interior sigma (the
    // gamma1 = 0, gamma2 >= 1 branch where c(sigma) -> 0 as sigma -> 0+,
    // reported with sigma_star at the search edge / 0).
    bool attained = true;
};

/// Minimum of c(sigma) over sigma > 0.  Uses the closed forms when gamma1 or
/// gamma2 vanishes, otherwise a 600-point geometric scan of [1e-3, 1e3]
/// (extended when the minimum sits at an edge) refined by golden-section
/// search to |d sigma|/sigma < 1e-10.  The returned c_min never exceeds 1.
DispersionMinimum minimize_dispersion(double gamma1, double gamma2);

/// Numeric minimization unconditionally (bypasses the closed forms); used to
/// cross-check the explicit branches.
DispersionMinimum minimize_dispersion_numeric(double gamma1, double gamma2);

/// Closed-form minima: gamma2 = 0 gives (sqrt(1+gamma1), 1/sqrt(1+gamma1));
/// gamma1 = 0 gives c_min = sqrt(1-gamma2) for gamma2 < 1 and 0 for
/// gamma2 >= 1 (the infimum; not attained).  Throws NotApplicableError when
/// both rates are positive.
DispersionMinimum cmin_explicit(double gamma1, double gamma2);

/// FKPP reference speed 2 sqrt(theta (1 - theta)) for theta in (0,1).
double fkpp_cmin(double theta);

struct LeadingEdge {
    double c;
    double lambda;  // (c + sqrt(c^2 + 4 gamma1)) / 2
    bool positive;  // c * lambda - 1 > 0 beyond roundoff (false at the boundary)
};

/// Leading-edge decay rate and the positivity flag for the degenerate case
/// Gamma2(0) = 0.  The flag is true exactly when c > 1/sqrt(1+gamma1); the
/// implementation cross-checks both forms.
LeadingEdge leading_edge(double c, double gamma1);

enum class RearKind { ExtinctProliferation, Coexistence };

struct RearState {
    double u1, u2;
    RearKind kind;
};

struct SteadyStateSet {
    double front_u1 = 0.0, front_u2 = 0.0;  // the origin, always a steady state
    std::vector<RearState> rear;
};

/// Rear steady states: (U*, 0) when Gamma1 has a root U* in (0,1] (bisection),
/// and the coexistence state (Gamma2(1), Gamma1(1)) / (Gamma1(1)+Gamma2(1))
/// when Gamma1(1) > 0.
SteadyStateSet steady_states(const SwitchingPair& pair);

enum class SpeedMethod { ReactionIntegral, FrontTracking };

struct SpeedEstimate {
    double value = 0.0;
    SpeedMethod method = SpeedMethod::ReactionIntegral;
    double window_begin = 0.0, window_end = 0.0;  // time window used
    double dispersion_stddev = 0.0;               // spread of per-snapshot estimates
    bool converged = false;                       // relative spread < 1%
    bool rear_settled = true;                     // left plateau flat to 1e-4 (integral method)
    bool rear_matches_steady_state = true;        // plateau within 1e-2 of a computed rear state
};

/// Wave speed from the integral identity c = integral of U2 (1 - U) dz,
/// evaluated by the trapezoidal rule per snapshot and averaged over the last
/// third of the run.  Requires a full-model trajectory whose front stays
/// clear of the right boundary (otherwise throws NumericalError).
SpeedEstimate speed_reaction_integral(const Trajectory& trajectory, const SwitchingPair& pair);

/// Wave speed from level-crossing front positions: per snapshot, the
/// rightmost x where the total density crosses `threshold` (linear
/// interpolation between cells), fitted by least squares over the last third
/// of the run.  Throws NumericalError when the threshold is never crossed.
SpeedEstimate speed_front_tracking(const Trajectory& trajectory, double threshold);

}  // namespace gogrow
