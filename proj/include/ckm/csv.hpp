#pragma once

// CSV emission and ingestion. Snapshot files carry the header
// "x,theta1,...,thetaN", one row per node, 17 significant digits; file names
// encode the snapshot time with fixed width, e.g. snapshot_t00000.050000.csv.

#include <string>
#include <vector>

#include "ckm/closed_forms.hpp"
#include "ckm/core.hpp"
#include "ckm/harness.hpp"

namespace ckm {

std::string snapshot_filename(double t);

void write_snapshot_csv(const std::string& path, const Grid& grid, const FieldState& state);

/// Inverse of write_snapshot_csv; the x column must be uniformly spaced.
std::pair<Grid, FieldState> read_snapshot_csv(const std::string& path);

void write_long_format_csv(const std::string& path, const Grid& grid,
                           const std::vector<FieldState>& snapshots);

void write_singular_points_csv(const std::string& path,
                               const std::vector<SingularPoint>& points);

void write_convergence_csv(const std::string& path, const ConvergenceTable& table);

struct ResidualRow {
    double x, t, residual;
};
void write_residual_csv(const std::string& path, const std::vector<ResidualRow>& rows);

void write_percentage_csv(const std::string& path, const Grid& grid,
                          const std::vector<std::vector<double>>& percentages);

}  // namespace ckm
