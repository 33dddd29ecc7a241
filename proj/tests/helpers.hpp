#pragma once
// Shared test utilities: finite-difference oracles, error metrics and the
// switching pairs used by the figure-reproduction scenarios.

#include <cmath>
#include <random>

#include "gogrow/switching.hpp"

namespace testutil {

template <class F>
double central_diff(F&& f, double x, double h = 1e-6) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
    if (want == 0.0) return std::abs(got);
    return std::abs(got - want) / std::abs(want);
}

// scenario pairs (figure 1 of the write-up: four switching choices)
inline gogrow::SwitchingPair pair_fig1a() {
    return {gogrow::SwitchingFunction::constant(0.5), gogrow::SwitchingFunction::constant(1.0)};
}
inline gogrow::SwitchingPair pair_fig1b() {
    return {gogrow::SwitchingFunction::constant(0.5), gogrow::SwitchingFunction::linear(1.5)};
}
inline gogrow::SwitchingPair pair_fig1c() {
    return {gogrow::SwitchingFunction::linear_decay(0.5), gogrow::SwitchingFunction::linear(1.5)};
}
inline gogrow::SwitchingPair pair_fig1d() {
    return {gogrow::SwitchingFunction::hill_decay(0.5, 0.5, 2.0),
            gogrow::SwitchingFunction::hill(1.5, 0.5, 2.0)};
}

inline std::vector<gogrow::SwitchingPair> figure_pairs() {
    return {pair_fig1a(), pair_fig1b(), pair_fig1c(), pair_fig1d()};
}

}  // namespace testutil
