#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "fgmplate/assembly.hpp"

namespace fgmplate {

/// Mid-plane field (u, v, w, tx, ty) sampled on a regular grid via the full
/// enriched approximation; w normalized to max |w| = 1.
struct ModeShapeField {
  int nx = 0, ny = 0;  // grid points per direction
  double a = 0.0, b = 0.0;
  std::vector<double> u, v, w, tx, ty;  // row-major, x fastest

  int idx(int i, int j) const { return j * nx + i; }
};

/// Samples a full-size modal vector on an (nx x ny)-point grid. Points within
/// 1e-9 of a crack line are nudged to the +normal side; points at a tip are
/// nudged radially.
ModeShapeField sample_mode(const EnrichedModel& model, const Eigen::VectorXd& full_vector,
                           int grid_nx = 101, int grid_ny = 101);

/// Legacy-VTK structured grid, ASCII: POINT_DATA carries scalar w and vector
/// rotation = (tx, ty, 0).
void write_vtk(const ModeShapeField& field, const std::string& title, std::ostream& out);

/// Reads back a file produced by write_vtk (round-trip checks, re-plotting).
ModeShapeField read_vtk(std::istream& in);

/// One sweep-result row: resolved inputs (as name/value strings in a fixed
/// order) plus the ascending nondimensional frequencies.
struct TableRow {
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<double> omegas;   // nondimensional
  std::string error;            // nonempty when the cell failed
};

struct ResultTable {
  std::vector<std::string> input_columns;
  int n_modes = 0;
  std::vector<TableRow> rows;
};

/// CSV with the inputs first, then Omega_1..Omega_K rounded to 4 decimals;
/// failed cells keep their row with the error in the last column.
void write_csv(const ResultTable& table, std::ostream& out);

}  // namespace fgmplate
