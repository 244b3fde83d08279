#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "allmach/core/field.hpp"
#include "allmach/core/grid.hpp"
#include "allmach/core/state.hpp"

namespace allmach {

/// Field snapshot: header `x[,y],rho,u[,v],p,E`, one row per interior cell
/// (x fastest), 17 significant digits.
void write_snapshot(std::ostream& os, const ConservedField& u, const Grid& grid,
                    const EulerParams& prm);
void write_snapshot(const std::filesystem::path& path, const ConservedField& u,
                    const Grid& grid, const EulerParams& prm);

/// Reads a snapshot written by `write_snapshot` back onto `grid`; the row count
/// and coordinates must match the grid (GridMismatch otherwise).
ConservedField read_snapshot(const std::filesystem::path& path, const Grid& grid,
                             const EulerParams& prm);

/// Counts data rows of a snapshot, used to infer its resolution.
std::size_t snapshot_rows(const std::filesystem::path& path);

/// `t,value` time series.
void write_time_series(const std::filesystem::path& path,
                       const std::vector<std::pair<double, double>>& series);

std::string format_double(double v);

}  // namespace allmach
