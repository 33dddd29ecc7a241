#pragma once
// Fast-switching single-population reduction.
//
// In the fast-switching regime the two-phenotype model collapses to a single
// equation for the total density,
//
//     d rho / dt = div( D(rho) grad rho ) + r(rho) rho,
//
// with
//
//     D(rho) = (Gamma1 Gamma2' - Gamma1' Gamma2) rho / (Gamma1 + Gamma2)^2
//              + Gamma2 / (Gamma1 + Gamma2),
//     r(rho) = Gamma1 (1 - rho) / (Gamma1 + Gamma2).
//
// For constant pairs D = theta and r = (1 - theta)(1 - rho) with
// theta = Gamma2 / (Gamma1 + Gamma2), the FKPP form.  All functions here use
// the epsilon = 1 rates; epsilon cancels in every ratio.

#include <cstddef>
#include <optional>
#include <vector>

#include "gogrow/switching.hpp"

namespace gogrow {

struct EquilibriumFractions {
    double rho1;  // invasive share,      Gamma2 rho / (Gamma1 + Gamma2)
    double rho2;  // proliferative share, Gamma1 rho / (Gamma1 + Gamma2)
};

/// Equilibrium split of a total density rho between the two phenotypes.
/// Throws InvalidPairError when Gamma1 + Gamma2 vanishes at rho.
EquilibriumFractions equilibrium_fractions(const SwitchingPair& pair, double rho);

/// Effective diffusion coefficient D(rho) of the reduction.
double effective_diffusion(const SwitchingPair& pair, double rho);

/// Effective per-capita proliferation rate r(rho).
double effective_rate(const SwitchingPair& pair, double rho);

/// FKPP parameter theta = Gamma2 / (Gamma1 + Gamma2) for constant pairs.
/// Throws NotApplicableError unless both rates are constant, or when theta
/// falls outside (0,1).
double fkpp_theta(const SwitchingPair& pair);

/// Small-density diffusion slope 2 Gamma2'(0) / Gamma1(0), valid for the
/// degenerate case Gamma2(0) = 0, Gamma1(0) > 0 where D(rho) ~ slope * rho.
double small_density_slope(const SwitchingPair& pair);

/// Point evaluators for D and r plus the FKPP theta when it exists.
struct ReducedCoefficients {
    SwitchingPair pair;
    std::optional<double> theta;

    static ReducedCoefficients from_pair(const SwitchingPair& pair);

    double diffusion(double rho) const { return effective_diffusion(pair, rho); }
    double rate(double rho) const { return effective_rate(pair, rho); }
};

/// Precomputed lookup table for D(rho) and r(rho) on [0, rho_max], linear
/// interpolation between samples.  The reduced-model solver reads these per
/// stencil point; outside the tabulated range it falls back to the direct
/// formulas.
class CoefficientTable {
public:
    explicit CoefficientTable(const SwitchingPair& pair, double rho_max = 1.05,
                              std::size_t samples = 4096);

    double diffusion(double rho) const;
    double rate(double rho) const;

    double max_diffusion() const { return max_d_; }
    double max_rate() const { return max_r_; }
    double rho_max() const { return rho_max_; }

private:
    SwitchingPair pair_;
    double rho_max_;
    double drho_;
    std::vector<double> d_, r_;
    double max_d_ = 0.0, max_r_ = 0.0;
};

}  // namespace gogrow
