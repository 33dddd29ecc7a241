#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gogrow/reduced.hpp"
#include "helpers.hpp"

using namespace gogrow;
using testutil::central_diff;

namespace {

// test-side oracle: the reduction coefficients assembled from
// finite-difference derivatives of the raw rates
double diffusion_fd(const SwitchingPair& pair, double rho) {
    const double g1 = pair.gamma1(rho);
    const double g2 = pair.gamma2(rho);
    const double s = g1 + g2;
    const double d1 = central_diff([&](double r) { return pair.gamma1(r); }, rho);
    const double d2 = central_diff([&](double r) { return pair.gamma2(r); }, rho);
    return (g1 * d2 - d1 * g2) * rho / (s * s) + g2 / s;
}

std::vector<SwitchingPair> shipped_pairs() {
    auto pairs = testutil::figure_pairs();
    // sweep-style instances with non-increasing Gamma1
    pairs.emplace_back(SwitchingFunction::constant(0.25), SwitchingFunction::constant(2.0));
    pairs.emplace_back(SwitchingFunction::constant(1.0), SwitchingFunction::constant(0.5));
    pairs.emplace_back(SwitchingFunction::constant(0.5), SwitchingFunction::linear(0.5));
    pairs.emplace_back(SwitchingFunction::hill_decay(0.5, 0.5, 2.0),
                       SwitchingFunction::hill(0.5, 0.5, 2.0));
    return pairs;
}

}  // namespace

TEST_CASE("equilibrium fractions") {
    const SwitchingPair even{SwitchingFunction::constant(1.0), SwitchingFunction::constant(1.0)};
    const auto f = equilibrium_fractions(even, 0.8);
    CHECK(f.rho1 == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(f.rho2 == doctest::Approx(0.4).epsilon(1e-14));

    const auto g = equilibrium_fractions(testutil::pair_fig1a(), 1.0);
    CHECK(g.rho1 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(g.rho2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const auto z = equilibrium_fractions(testutil::pair_fig1d(), 0.0);
    CHECK(z.rho1 == 0.0);
    CHECK(z.rho2 == 0.0);

    // components always sum to rho up to roundoff
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> rho(0.0, 1.05);
    for (const auto& pair : testutil::figure_pairs()) {
        for (int k = 0; k < 50; ++k) {
            const double r = rho(rng);
            const auto eq = equilibrium_fractions(pair, r);
            CHECK(std::abs(eq.rho1 + eq.rho2 - r) < 1e-14);
        }
    }
}

TEST_CASE("effective diffusion at hand-computed points") {
    for (double r : {0.0, 0.3, 0.7, 1.0})
        CHECK(effective_diffusion(testutil::pair_fig1a(), r) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    const auto degenerate = testutil::pair_fig1b();
    CHECK(effective_diffusion(degenerate, 0.0) == 0.0);
    // (0.5*1.5 - 0) * 0.1 / 0.65^2 + 0.15/0.65 = 69/169
    CHECK(effective_diffusion(degenerate, 0.1) ==
          doctest::Approx(69.0 / 169.0).epsilon(1e-14));
}

TEST_CASE("effective rate at hand-computed points") {
    for (const auto& pair : testutil::figure_pairs())
        CHECK(std::abs(effective_rate(pair, 1.0)) < 1e-14);
    CHECK(effective_rate(testutil::pair_fig1a(), 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    // Gamma2(0) = 0 makes the rate start at the bare logistic value
    CHECK(effective_rate(testutil::pair_fig1b(), 0.0) == 1.0);
    const SwitchingPair other{SwitchingFunction::constant(2.0), SwitchingFunction::linear(0.7)};
    CHECK(effective_rate(other, 0.0) == 1.0);
}

TEST_CASE("reduction errors on a vanishing total rate") {
    const SwitchingPair dead{SwitchingFunction::linear_decay(1.0), SwitchingFunction::linear(0.0)};
    CHECK_THROWS_AS(effective_diffusion(dead, 1.0), InvalidPairError);
    CHECK_THROWS_AS(effective_rate(dead, 1.0), InvalidPairError);
    CHECK_THROWS_AS(equilibrium_fractions(dead, 1.0), InvalidPairError);
}

TEST_CASE("fkpp theta") {
    CHECK(fkpp_theta(testutil::pair_fig1a()) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const SwitchingPair even{SwitchingFunction::constant(1.0), SwitchingFunction::constant(1.0)};
    CHECK(fkpp_theta(even) == 0.5);
    CHECK_THROWS_AS(fkpp_theta(testutil::pair_fig1b()), NotApplicableError);

    const auto coeff = ReducedCoefficients::from_pair(testutil::pair_fig1a());
    REQUIRE(coeff.theta.has_value());
    CHECK(*coeff.theta == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK_FALSE(ReducedCoefficients::from_pair(testutil::pair_fig1b()).theta.has_value());
}

TEST_CASE("small-density diffusion slope") {
    CHECK(small_density_slope(testutil::pair_fig1b()) == doctest::Approx(6.0).epsilon(1e-14));
    const SwitchingPair hill{SwitchingFunction::constant(0.5),
                             SwitchingFunction::hill(1.5, 0.5, 2.0)};
    CHECK(small_density_slope(hill) == 0.0);  // Gamma2'(0) = 0 for n = 2
    CHECK_THROWS_AS(small_density_slope(testutil::pair_fig1a()), NotApplicableError);
}

TEST_CASE("diffusion stays nonnegative and the rate non-increasing for shipped pairs") {
    for (const auto& pair : shipped_pairs()) {
        double prev_rate = effective_rate(pair, 0.0);
        for (int k = 0; k < 1000; ++k) {
            const double rho = static_cast<double>(k) / 999.0;
            CHECK(effective_diffusion(pair, rho) >= -1e-12);
            const double r = effective_rate(pair, rho);
            if (k > 0) CHECK(r <= prev_rate + 1e-10);
            prev_rate = r;
        }
    }
}

TEST_CASE("analytic coefficients agree with the finite-difference assembly") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> rho(0.01, 1.0);
    for (const auto& pair : testutil::figure_pairs()) {
        for (int k = 0; k < 40; ++k) {
            const double r = rho(rng);
            const double exact = effective_diffusion(pair, r);
            CHECK(std::abs(diffusion_fd(pair, r) - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("small-density slope matches the secant of D") {
    const auto pair = testutil::pair_fig1b();
    const double h = 1e-4;
    const double secant = (effective_diffusion(pair, h) - effective_diffusion(pair, 0.0)) / h;
    CHECK(testutil::rel_err(secant, small_density_slope(pair)) < 1e-2);
}

TEST_CASE("coefficient table interpolates the direct formulas") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> rho(0.0, 1.05);
    for (const auto& pair : testutil::figure_pairs()) {
        const CoefficientTable table(pair);
        for (int k = 0; k < 200; ++k) {
            const double r = rho(rng);
            CHECK(std::abs(table.diffusion(r) - effective_diffusion(pair, r)) < 1e-5);
            CHECK(std::abs(table.rate(r) - effective_rate(pair, r)) < 1e-5);
        }
        // outside the tabulated range the direct formulas take over
        CHECK(table.diffusion(1.2) == effective_diffusion(pair, 1.2));
        CHECK(table.rate(1.2) == effective_rate(pair, 1.2));
    }
    const CoefficientTable fkpp(testutil::pair_fig1a());
    CHECK(fkpp.max_diffusion() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(fkpp.max_rate() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}
