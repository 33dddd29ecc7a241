#pragma once
// CSV input/output.  Comma separated, header row, '.' decimal separator,
// no locale dependence; numeric fields are printed with %.12g.

#include <filesystem>
#include <string>

#include "gogrow/grid.hpp"

namespace gogrow::csv {

std::string format(double v);

/// Columns: t,x,rho1,rho2,rho_total for full-model runs; t,x,rho for
/// reduced runs.  One block of rows per snapshot, cells in grid order.
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Inverse of write_trajectory; the grid is reconstructed from the x column.
Trajectory read_trajectory(const std::filesystem::path& path);

}  // namespace gogrow::csv
