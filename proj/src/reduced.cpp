#include "gogrow/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gogrow {

namespace {

double rate_sum_or_throw(const SwitchingPair& pair, double rho, double& g1, double& g2) {
    g1 = pair.gamma1(rho);
    g2 = pair.gamma2(rho);
    const double s = g1 + g2;
    if (s <= 0.0) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "Gamma1 + Gamma2 = %g at rho = %g: reduction undefined", s, rho);
        throw InvalidPairError(buf);
    }
    return s;
}

}  // namespace

EquilibriumFractions equilibrium_fractions(const SwitchingPair& pair, double rho) {
    double g1, g2;
    const double s = rate_sum_or_throw(pair, rho, g1, g2);
    return {g2 * rho / s, g1 * rho / s};
}

double effective_diffusion(const SwitchingPair& pair, double rho) {
    double g1, g2;
    const double s = rate_sum_or_throw(pair, rho, g1, g2);
    const double d1 = pair.gamma1.derivative(rho);
    const double d2 = pair.gamma2.derivative(rho);
    return (g1 * d2 - d1 * g2) * rho / (s * s) + g2 / s;
}

double effective_rate(const SwitchingPair& pair, double rho) {
    double g1, g2;
    const double s = rate_sum_or_throw(pair, rho, g1, g2);
    return g1 * (1.0 - rho) / s;
}

double fkpp_theta(const SwitchingPair& pair) {
    if (!pair.gamma1.is_constant() || !pair.gamma2.is_constant())
        throw NotApplicableError("fkpp_theta requires a constant switching pair");
    double g1, g2;
    const double s = rate_sum_or_throw(pair, 0.0, g1, g2);
    const double theta = g2 / s;
    if (!(theta > 0.0 && theta < 1.0))
        throw NotApplicableError("fkpp_theta: theta lies outside (0,1) for this pair");
    return theta;
}

double small_density_slope(const SwitchingPair& pair) {
    const double g1 = pair.gamma1_at_zero();
    const double g2 = pair.gamma2_at_zero();
    if (g2 != 0.0)
        throw NotApplicableError("small_density_slope requires Gamma2(0) = 0");
    if (g1 <= 0.0)
        throw NotApplicableError("small_density_slope requires Gamma1(0) > 0");
    return 2.0 * pair.gamma2.derivative(0.0) / g1;
}

ReducedCoefficients ReducedCoefficients::from_pair(const SwitchingPair& pair) {
    ReducedCoefficients out{pair, std::nullopt};
    if (pair.gamma1.is_constant() && pair.gamma2.is_constant()) {
        const double g1 = pair.gamma1_at_zero();
        const double g2 = pair.gamma2_at_zero();
        const double s = g1 + g2;
        if (s > 0.0) {
            const double theta = g2 / s;
            if (theta > 0.0 && theta < 1.0) out.theta = theta;
        }
    }
    return out;
}

CoefficientTable::CoefficientTable(const SwitchingPair& pair, double rho_max, std::size_t samples)
    : pair_(pair), rho_max_(rho_max) {
    if (!(rho_max > 0.0) || samples < 2)
        throw DomainError("coefficient table: need rho_max > 0 and at least 2 samples");
    drho_ = rho_max / static_cast<double>(samples - 1);
    d_.resize(samples);
    r_.resize(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double rho = static_cast<double>(k) * drho_;
        d_[k] = effective_diffusion(pair_, rho);
        r_[k] = effective_rate(pair_, rho);
        max_d_ = std::max(max_d_, d_[k]);
        max_r_ = std::max(max_r_, r_[k]);
    }
}

double CoefficientTable::diffusion(double rho) const {
    if (rho < 0.0 || rho > rho_max_) return effective_diffusion(pair_, rho);
    const double u = rho / drho_;
    const auto k = std::min(static_cast<std::size_t>(u), d_.size() - 2);
    const double t = u - static_cast<double>(k);
    return d_[k] + t * (d_[k + 1] - d_[k]);
}

double CoefficientTable::rate(double rho) const {
    if (rho < 0.0 || rho > rho_max_) return effective_rate(pair_, rho);
    const double u = rho / drho_;
    const auto k = std::min(static_cast<std::size_t>(u), r_.size() - 2);
    const double t = u - static_cast<double>(k);
    return r_[k] + t * (r_[k + 1] - r_[k]);
}

}  // namespace gogrow
