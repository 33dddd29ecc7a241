#include "gogrow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gogrow {

Grid1D Grid1D::make(double length, int n_cells) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("grid: length must be positive and finite");
    if (n_cells < 1) throw ConfigError("grid: n_cells must be >= 1");
    Grid1D g;
    g.length = length;
    g.n_cells = n_cells;
    g.dx = length / n_cells;
    return g;
}

GridState make_initial(const InitialCondition& init, const Grid1D& grid, ModelKind model) {
    const auto n = static_cast<std::size_t>(grid.n_cells);
    GridState state;
    state.time = 0.0;

    if (const auto* step = std::get_if<StepInitial>(&init)) {
        if (!(step->level >= 0.0) || !std::isfinite(step->level))
            throw ConfigError("initial: step level must be nonnegative and finite");
        if (!(step->x_step >= 0.0) || step->x_step > grid.length) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "initial: x_step = %g outside grid [0, %g]",
                          step->x_step, grid.length);
            throw ConfigError(buf);
        }
        if (model == ModelKind::Full) {
            state.rho1.assign(n, 0.0);
            state.rho2.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (grid.center(static_cast<int>(i)) < step->x_step) {
                    state.rho1[i] = step->level;
                    state.rho2[i] = step->level;
                }
            }
        } else {
            state.rho1.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (grid.center(static_cast<int>(i)) < step->x_step)
                    state.rho1[i] = 2.0 * step->level;
            }
        }
        return state;
    }

    const auto& custom = std::get<CustomInitial>(init);
    if (custom.rho1.size() != n)
        throw ConfigError("initial: custom rho1 length does not match the grid");
    state.rho1 = custom.rho1;
    if (model == ModelKind::Full) {
        if (custom.rho2.size() != n)
            throw ConfigError("initial: custom rho2 length does not match the grid");
        state.rho2 = custom.rho2;
    }
    return state;
}

double sup_distance_total(const GridState& a, const GridState& b) {
    if (a.rho1.size() != b.rho1.size())
        throw DomainError("sup_distance_total: states live on different grids");
    double d = 0.0;
    for (std::size_t i = 0; i < a.rho1.size(); ++i)
        d = std::max(d, std::abs(a.total(i) - b.total(i)));
    return d;
}

}  // namespace gogrow
