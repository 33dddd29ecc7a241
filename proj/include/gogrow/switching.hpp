#pragma once
// Density-dependent phenotypic switching rates.
//
// A SwitchingFunction maps the total cell density rho to a switching rate.
// Gamma1 moves invasive (diffusing) cells to the proliferative state and
// Gamma2 moves proliferative cells to the invasive state; both depend only
// on the total density.  Five closed-form families cover the shipped
// invasion scenarios; TabulatedRate interpolates user-supplied samples for
// anything else.

#include <string>
#include <variant>
#include <vector>

#include "gogrow/errors.hpp"

namespace gogrow {

/// Gamma(rho) = a
struct ConstantRate {
    double a;
    double eval(double) const { return a; }
    double derivative(double) const { return 0.0; }
    std::string describe() const;
};

/// Gamma(rho) = b rho
struct LinearRate {
    double b;
    double eval(double rho) const { return b * rho; }
    double derivative(double) const { return b; }
    std::string describe() const;
};

/// Gamma(rho) = a (1 - rho)
struct LinearDecayRate {
    double a;
    double eval(double rho) const { return a * (1.0 - rho); }
    double derivative(double) const { return -a; }
    std::string describe() const;
};

/// Gamma(rho) = b rho^n / (K^n + rho^n)
struct HillRate {
    double b, K, n;
    double eval(double rho) const;
    double derivative(double rho) const;
    std::string describe() const;
};

/// Gamma(rho) = a (1 - rho^n / (K^n + rho^n))
struct HillDecayRate {
    double a, K, n;
    double eval(double rho) const;
    double derivative(double rho) const;
    std::string describe() const;
};

/// Piecewise-linear interpolation of (rho, gamma) samples.
/// Flat extrapolation outside the sampled range (derivative 0 there).
struct TabulatedRate {
    std::vector<double> rho;
    std::vector<double> gamma;
    double eval(double r) const;
    double derivative(double r) const;
    std::string describe() const;
};

class SwitchingFunction {
public:
    using Family = std::variant<ConstantRate, LinearRate, LinearDecayRate,
                                HillRate, HillDecayRate, TabulatedRate>;

    /// Validates parameters: all must be finite and nonnegative; tabulated
    /// samples need at least two strictly increasing nodes.
    explicit SwitchingFunction(Family family);

    static SwitchingFunction constant(double a);
    static SwitchingFunction linear(double b);
    static SwitchingFunction linear_decay(double a);
    static SwitchingFunction hill(double b, double K, double n);
    static SwitchingFunction hill_decay(double a, double K, double n);
    static SwitchingFunction tabulated(std::vector<double> rho, std::vector<double> gamma);

    /// Gamma(rho).  Exact at rho = 0 (Hill returns 0 without forming 0/0).
    /// Throws DomainError on non-finite input.
    double operator()(double rho) const;

    /// Analytic derivative Gamma'(rho).
    double derivative(double rho) const;

    bool is_constant() const;

    /// Gamma(0); the linearized rate at the leading edge.
    double at_zero() const { return (*this)(0.0); }

    const Family& family() const { return family_; }
    std::string describe() const;

private:
    Family family_;
};

/// The pair (Gamma1, Gamma2) plus the fast-switching scale epsilon.
/// Effective rates inside the solver are Gamma_i / epsilon; analysis
/// operations always use the epsilon = 1 rates (epsilon cancels in every
/// ratio the reduction uses).  Immutable after construction; safe to share
/// across threads.
struct SwitchingPair {
    SwitchingFunction gamma1;  // invasive -> proliferative
    SwitchingFunction gamma2;  // proliferative -> invasive
    double epsilon;

    SwitchingPair(SwitchingFunction g1, SwitchingFunction g2, double eps = 1.0);

    double gamma1_at_zero() const { return gamma1.at_zero(); }
    double gamma2_at_zero() const { return gamma2.at_zero(); }
};

struct ValidationReport {
    bool valid;  // nonnegativity of both rates on [0,1] (sum positivity throws instead)
    bool gamma1_nonnegative, gamma2_nonnegative;
    bool gamma1_non_increasing, gamma1_non_decreasing;
    bool gamma2_non_increasing, gamma2_non_decreasing;
    bool sum_positive;
    double gamma1_at_zero, gamma2_at_zero;
    bool degenerate_diffusion;  // Gamma2(0) == 0, i.e. D(0) = 0 in the reduction
    std::vector<std::string> warnings;
};

/// Samples both rates at `samples` uniform points on [0,1] and reports
/// nonnegativity, monotonicity direction (a warning when it fails, never an
/// error), the leading-edge rates gamma_i = Gamma_i(0), and the degenerate
/// diffusion flag.  Throws InvalidPairError if Gamma1 + Gamma2 vanishes at
/// any sample (the reduction's denominators become undefined).
ValidationReport validate_pair(const SwitchingPair& pair, int samples);

}  // namespace gogrow
