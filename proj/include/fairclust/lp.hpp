#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "fairclust/core.hpp"
#include "fairclust/simplex.hpp"

namespace fairclust::lp {

// Natural relaxation of fair clustering:
//
//   minimize γ
//   s.t. Σ_f y_f = k
//        Σ_f x_{f,p} = 1                          for every point p
//        Σ_{p∈P_j} Σ_f x_{f,p}·d(f,p)^z·w_j(p) ≤ γ   for every group j
//        x_{f,p} ≤ y_f                            for every (f, p)
//        y, x, γ ≥ 0
//
// Variables: y_f in facility order, then x_{f,p} facility-major, then γ.
// Rows: the k row, the point rows, the group rows, then the (f, p) rows
// facility-major.
struct LPModel {
  std::size_t num_facilities = 0;
  std::size_t num_points = 0;
  std::size_t num_groups = 0;
  std::size_t k = 0;
  std::vector<double> assignment_cost;  // d(f,p)^z·w(p), facility-major
  std::vector<int> point_group;         // group of each point, -1 if none
  LinearProgram program;

  std::size_t y_var(std::size_t f) const { return f; }
  std::size_t x_var(std::size_t f, std::size_t p) const {
    return num_facilities + f * num_points + p;
  }
  std::size_t gamma_var() const { return num_facilities + num_facilities * num_points; }
  std::size_t num_vars() const { return gamma_var() + 1; }

  std::size_t k_row() const { return 0; }
  std::size_t point_row(std::size_t p) const { return 1 + p; }
  std::size_t group_row(std::size_t j) const { return 1 + num_points + j; }
  std::size_t pair_row(std::size_t f, std::size_t p) const {
    return 1 + num_points + num_groups + f * num_points + p;
  }
  std::size_t num_rows() const { return program.rows.size(); }

  double cost(std::size_t f, std::size_t p) const { return assignment_cost[f * num_points + p]; }
};

struct FractionalSolution {
  std::vector<double> y;               // per facility
  std::vector<double> x;               // facility-major, num_facilities × num_points
  double gamma = 0.0;
  std::vector<double> per_point_cost;  // α_p = Σ_f x_{f,p}·d(f,p)^z·w(p)
  std::vector<double> duals;           // one per model row; empty if not from the solver
  std::size_t pivots = 0;

  std::size_t num_points() const { return per_point_cost.size(); }
  double x_at(std::size_t f, std::size_t p) const { return x[f * num_points() + p]; }
};

// Requires disjoint groups; throws InputError otherwise.
LPModel build_model(const Instance& inst);

// Solves to optimality with the dense simplex (Bland's rule).
FractionalSolution solve(const LPModel& model, const SimplexOptions& opts = {});

// Integral model point from a size-k center set: y = indicator of C, x routes
// each point to its Voronoi center, γ = fair cost.
FractionalSolution integral_solution(const Instance& inst, const LPModel& model,
                                     const CenterSet& centers);

struct FeasibilityReport {
  double k_sum = 0.0;          // |Σ y - k|
  double point_sum = 0.0;      // max_p |Σ_f x_{f,p} - 1|
  double group_cost = 0.0;     // max_j (cost_j - γ)^+
  double pair_bound = 0.0;     // max (x_{f,p} - y_f)^+
  double nonnegativity = 0.0;  // max (-v)^+ over all variables
  std::vector<std::size_t> violated_rows;  // rows with residual above tolerance

  double max_residual() const;
  bool ok(double tolerance = 1e-7) const { return max_residual() <= tolerance; }
};

FeasibilityReport check_feasibility(const FractionalSolution& sol, const LPModel& model,
                                    double tolerance = 1e-7);

// Recomputes per_point_cost from x.
void refresh_point_costs(FractionalSolution& sol, const LPModel& model);

// CPLEX-style LP text: variables y<f>, x<f>_<p>, gamma.
void write_lp_text(std::ostream& out, const LPModel& model);

}  // namespace fairclust::lp
