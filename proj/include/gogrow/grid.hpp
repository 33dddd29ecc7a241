#pragma once
// Uniform 1D cell-centered grid, per-time states and trajectories.
//
// Species numbering follows the governing equations: species 1 diffuses
// (invasive), species 2 proliferates logistically (proliferative).  Reduced
// single-population states store the total density in rho1 and leave rho2
// empty.

#include <variant>
#include <vector>

#include "gogrow/errors.hpp"

namespace gogrow {

enum class ModelKind { Full, Reduced };

struct Grid1D {
    double length = 0.0;
    int n_cells = 0;
    double dx = 0.0;

    static Grid1D make(double length, int n_cells);

    double center(int i) const { return (static_cast<double>(i) + 0.5) * dx; }
};

struct GridState {
    double time = 0.0;
    std::vector<double> rho1;
    std::vector<double> rho2;  // empty for reduced-model states

    bool is_full() const { return !rho2.empty(); }
    double total(std::size_t i) const { return is_full() ? rho1[i] + rho2[i] : rho1[i]; }
};

/// Step profile: both species at `level` left of x_step, 0 to the right
/// (reduced states carry the total 2*level).
struct StepInitial {
    double level;
    double x_step;
};

/// Explicit per-cell densities (rho2 ignored for reduced runs).
struct CustomInitial {
    std::vector<double> rho1;
    std::vector<double> rho2;
};

using InitialCondition = std::variant<StepInitial, CustomInitial>;

GridState make_initial(const InitialCondition& init, const Grid1D& grid, ModelKind model);

struct Trajectory {
    ModelKind model = ModelKind::Full;
    Grid1D grid;
    std::vector<GridState> snapshots;
};

/// Sup-norm distance between the total densities of two states on the same grid.
double sup_distance_total(const GridState& a, const GridState& b);

}  // namespace gogrow
