#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fairclust {

enum class RowSense { kLessEqual, kEqual, kGreaterEqual };

struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

// minimize c·x subject to rows, x ≥ 0. Columns flagged in fixed_zero are held
// at zero (never enter the basis).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<LinearRow> rows;
  std::vector<bool> fixed_zero;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  std::size_t max_pivots = 1000000;
};

struct SimplexResult {
  std::vector<double> x;
  // One multiplier per row, sign convention of the original rows:
  // ≤ rows carry y ≤ 0, ≥ rows y ≥ 0, equalities are free. At optimum
  // c_j - Σ_i y_i a_ij ≥ 0 for every column and c·x = b·y.
  std::vector<double> duals;
  double objective = 0.0;
  std::size_t pivots = 0;
};

// Two-phase dense tableau simplex with Bland's rule. Throws SolverError when
// the program is infeasible or unbounded, ResourceCapError past max_pivots.
SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& opts = {});

}  // namespace fairclust
