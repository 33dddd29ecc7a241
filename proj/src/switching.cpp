#include "gogrow/switching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace gogrow {

namespace {

// pow with fast paths for the small integer exponents every shipped family uses
double pow_n(double x, double n) {
    if (n == 0.0) return 1.0;
    if (n == 1.0) return x;
    if (n == 2.0) return x * x;
    if (n == 3.0) return x * x * x;
    if (n == std::floor(n) && n > 0.0 && n <= 16.0) {
        double r = 1.0, base = x;
        auto k = static_cast<unsigned>(n);
        while (k) {
            if (k & 1u) r *= base;
            base *= base;
            k >>= 1u;
        }
        return r;
    }
    return std::pow(x, n);
}

void require_finite_nonneg(double v, const char* name, const char* family) {
    if (!std::isfinite(v) || v < 0.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%s: parameter %s must be finite and nonnegative, got %g",
                      family, name, v);
        throw DomainError(buf);
    }
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

}  // namespace

double HillRate::eval(double rho) const {
    if (rho == 0.0) return 0.0;  // exact; avoids 0/0 when K = 0
    const double rn = pow_n(rho, n);
    const double kn = pow_n(K, n);
    return b * rn / (kn + rn);
}

double HillRate::derivative(double rho) const {
    const double rn = pow_n(rho, n);
    const double kn = pow_n(K, n);
    const double den = kn + rn;
    if (den == 0.0) return 0.0;
    return b * n * pow_n(rho, n - 1.0) * kn / (den * den);
}

double HillDecayRate::eval(double rho) const {
    if (rho == 0.0) return K == 0.0 ? 0.0 : a;
    const double rn = pow_n(rho, n);
    const double kn = pow_n(K, n);
    return a * kn / (kn + rn);
}

double HillDecayRate::derivative(double rho) const {
    const double rn = pow_n(rho, n);
    const double kn = pow_n(K, n);
    const double den = kn + rn;
    if (den == 0.0) return 0.0;
    return -a * n * pow_n(rho, n - 1.0) * kn / (den * den);
}

double TabulatedRate::eval(double r) const {
    if (r <= rho.front()) return gamma.front();
    if (r >= rho.back()) return gamma.back();
    const auto it = std::upper_bound(rho.begin(), rho.end(), r);
    const auto i = static_cast<std::size_t>(it - rho.begin());  // r < rho[i], r >= rho[i-1]
    const double t = (r - rho[i - 1]) / (rho[i] - rho[i - 1]);
    return gamma[i - 1] + t * (gamma[i] - gamma[i - 1]);
}

double TabulatedRate::derivative(double r) const {
    if (r < rho.front() || r > rho.back()) return 0.0;
    auto it = std::upper_bound(rho.begin(), rho.end(), r);
    if (it == rho.end()) --it;  // r == last node: slope of the final segment
    const auto i = static_cast<std::size_t>(it - rho.begin());
    return (gamma[i] - gamma[i - 1]) / (rho[i] - rho[i - 1]);
}

std::string ConstantRate::describe() const { return fmt("constant(a=%g)", a); }
std::string LinearRate::describe() const { return fmt("linear(b=%g)", b); }
std::string LinearDecayRate::describe() const { return fmt("linear_decay(a=%g)", a); }
std::string HillRate::describe() const { return fmt("hill(b=%g, K=%g, n=%g)", b, K, n); }
std::string HillDecayRate::describe() const { return fmt("hill_decay(a=%g, K=%g, n=%g)", a, K, n); }
std::string TabulatedRate::describe() const {
    return "tabulated(" + std::to_string(rho.size()) + " nodes)";
}

SwitchingFunction::SwitchingFunction(Family family) : family_(std::move(family)) {
    std::visit(
        [](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantRate>) {
                require_finite_nonneg(f.a, "a", "constant");
            } else if constexpr (std::is_same_v<T, LinearRate>) {
                require_finite_nonneg(f.b, "b", "linear");
            } else if constexpr (std::is_same_v<T, LinearDecayRate>) {
                require_finite_nonneg(f.a, "a", "linear_decay");
            } else if constexpr (std::is_same_v<T, HillRate>) {
                require_finite_nonneg(f.b, "b", "hill");
                require_finite_nonneg(f.K, "K", "hill");
                require_finite_nonneg(f.n, "n", "hill");
            } else if constexpr (std::is_same_v<T, HillDecayRate>) {
                require_finite_nonneg(f.a, "a", "hill_decay");
                require_finite_nonneg(f.K, "K", "hill_decay");
                require_finite_nonneg(f.n, "n", "hill_decay");
            } else {
                static_assert(std::is_same_v<T, TabulatedRate>);
                if (f.rho.size() < 2 || f.rho.size() != f.gamma.size())
                    throw DomainError("tabulated: need at least two (rho, gamma) samples of equal length");
                for (std::size_t i = 0; i < f.rho.size(); ++i) {
                    if (!std::isfinite(f.rho[i]) || !std::isfinite(f.gamma[i]))
                        throw DomainError("tabulated: samples must be finite");
                    if (i > 0 && f.rho[i] <= f.rho[i - 1])
                        throw DomainError("tabulated: rho samples must be strictly increasing");
                }
            }
        },
        family_);
}

SwitchingFunction SwitchingFunction::constant(double a) { return SwitchingFunction{ConstantRate{a}}; }
SwitchingFunction SwitchingFunction::linear(double b) { return SwitchingFunction{LinearRate{b}}; }
SwitchingFunction SwitchingFunction::linear_decay(double a) { return SwitchingFunction{LinearDecayRate{a}}; }
SwitchingFunction SwitchingFunction::hill(double b, double K, double n) {
    return SwitchingFunction{HillRate{b, K, n}};
}
SwitchingFunction SwitchingFunction::hill_decay(double a, double K, double n) {
    return SwitchingFunction{HillDecayRate{a, K, n}};
}
SwitchingFunction SwitchingFunction::tabulated(std::vector<double> rho, std::vector<double> gamma) {
    return SwitchingFunction{TabulatedRate{std::move(rho), std::move(gamma)}};
}

double SwitchingFunction::operator()(double rho) const {
    if (!std::isfinite(rho)) throw DomainError("switching rate evaluated at non-finite density");
    return std::visit([rho](const auto& f) { return f.eval(rho); }, family_);
}

double SwitchingFunction::derivative(double rho) const {
    if (!std::isfinite(rho)) throw DomainError("switching derivative evaluated at non-finite density");
    return std::visit([rho](const auto& f) { return f.derivative(rho); }, family_);
}

bool SwitchingFunction::is_constant() const {
    return std::holds_alternative<ConstantRate>(family_);
}

std::string SwitchingFunction::describe() const {
    return std::visit([](const auto& f) { return f.describe(); }, family_);
}

SwitchingPair::SwitchingPair(SwitchingFunction g1, SwitchingFunction g2, double eps)
    : gamma1(std::move(g1)), gamma2(std::move(g2)), epsilon(eps) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0)
        throw DomainError("switching pair: epsilon must be finite and positive");
    const double z1 = gamma1.at_zero();
    const double z2 = gamma2.at_zero();
    if (!std::isfinite(z1) || z1 < 0.0 || !std::isfinite(z2) || z2 < 0.0)
        throw InvalidPairError("switching pair: Gamma_i(0) must be finite and nonnegative");
}

ValidationReport validate_pair(const SwitchingPair& pair, int samples) {
    if (samples < 2) throw DomainError("validate_pair: samples must be >= 2");

    ValidationReport rep{};
    rep.gamma1_nonnegative = rep.gamma2_nonnegative = true;
    rep.gamma1_non_increasing = rep.gamma1_non_decreasing = true;
    rep.gamma2_non_increasing = rep.gamma2_non_decreasing = true;
    rep.sum_positive = true;

    constexpr double kMonotoneSlack = 1e-12;
    double prev1 = 0.0, prev2 = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double rho = static_cast<double>(k) / (samples - 1);
        const double g1 = pair.gamma1(rho);
        const double g2 = pair.gamma2(rho);
        if (g1 + g2 <= 0.0) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "invalid pair: Gamma1 + Gamma2 = %g at rho = %g", g1 + g2, rho);
            throw InvalidPairError(buf);
        }
        if (g1 < 0.0) rep.gamma1_nonnegative = false;
        if (g2 < 0.0) rep.gamma2_nonnegative = false;
        if (k > 0) {
            if (g1 > prev1 + kMonotoneSlack) rep.gamma1_non_increasing = false;
            if (g1 < prev1 - kMonotoneSlack) rep.gamma1_non_decreasing = false;
            if (g2 > prev2 + kMonotoneSlack) rep.gamma2_non_increasing = false;
            if (g2 < prev2 - kMonotoneSlack) rep.gamma2_non_decreasing = false;
        }
        prev1 = g1;
        prev2 = g2;
    }

    rep.gamma1_at_zero = pair.gamma1_at_zero();
    rep.gamma2_at_zero = pair.gamma2_at_zero();
    rep.degenerate_diffusion = rep.gamma2_at_zero == 0.0;
    rep.valid = rep.gamma1_nonnegative && rep.gamma2_nonnegative;

    if (!rep.gamma1_nonnegative)
        rep.warnings.push_back("Gamma1 takes negative values on [0,1]");
    if (!rep.gamma2_nonnegative)
        rep.warnings.push_back("Gamma2 takes negative values on [0,1]");
    if (!rep.gamma1_non_increasing)
        rep.warnings.push_back("Gamma1 is not non-increasing on [0,1]");
    if (!rep.gamma2_non_decreasing)
        rep.warnings.push_back("Gamma2 is not non-decreasing on [0,1]");
    return rep;
}

}  // namespace gogrow
