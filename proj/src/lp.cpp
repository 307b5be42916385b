#include "fairclust/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairclust/error.hpp"

namespace fairclust::lp {

namespace {
constexpr double kOverflowRatio = 1e15;
}

LPModel build_model(const Instance& inst) {
  if (!inst.groups_disjoint()) {
    throw InputError("LP model requires disjoint groups; apply split_overlapping_groups first");
  }
  LPModel model;
  const std::size_t nf = inst.num_facilities();
  const std::size_t np = inst.num_points();
  model.num_facilities = nf;
  model.num_points = np;
  model.num_groups = inst.num_groups();
  model.k = inst.k();

  std::vector<double> weight(np, 0.0);
  model.point_group.assign(np, -1);
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    const auto& g = inst.groups()[j];
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      weight[g.members[i]] = g.weights[i];
      model.point_group[g.members[i]] = static_cast<int>(j);
    }
  }

  model.assignment_cost.resize(nf * np);
  double min_nonzero = std::numeric_limits<double>::infinity();
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t p = 0; p < np; ++p) {
      const double c = cost_power(inst.facility_point_distance(f, p), inst.z()) * weight[p];
      if (!std::isfinite(c)) throw InputError("assignment cost overflows double precision");
      model.assignment_cost[f * np + p] = c;
      if (c > 0.0) min_nonzero = std::min(min_nonzero, c);
    }
  }

  LinearProgram& prog = model.program;
  prog.num_vars = model.num_vars();
  prog.objective.assign(prog.num_vars, 0.0);
  prog.objective[model.gamma_var()] = 1.0;
  prog.fixed_zero.assign(prog.num_vars, false);

  if (std::isfinite(min_nonzero)) {
    const double limit = kOverflowRatio * min_nonzero;
    for (std::size_t p = 0; p < np; ++p) {
      double cheapest = std::numeric_limits<double>::infinity();
      for (std::size_t f = 0; f < nf; ++f) cheapest = std::min(cheapest, model.cost(f, p));
      for (std::size_t f = 0; f < nf; ++f) {
        const double c = model.cost(f, p);
        if (c > limit && c > cheapest) prog.fixed_zero[model.x_var(f, p)] = true;
      }
    }
  }

  prog.rows.reserve(1 + np + model.num_groups + nf * np);
  LinearRow k_row{{}, RowSense::kEqual, static_cast<double>(inst.k())};
  for (std::size_t f = 0; f < nf; ++f) k_row.terms.push_back({model.y_var(f), 1.0});
  prog.rows.push_back(std::move(k_row));

  for (std::size_t p = 0; p < np; ++p) {
    LinearRow row{{}, RowSense::kEqual, 1.0};
    for (std::size_t f = 0; f < nf; ++f) row.terms.push_back({model.x_var(f, p), 1.0});
    prog.rows.push_back(std::move(row));
  }

  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    LinearRow row{{}, RowSense::kLessEqual, 0.0};
    for (std::size_t f = 0; f < nf; ++f) {
      for (std::size_t p : inst.groups()[j].members) {
        const double c = model.cost(f, p);
        if (c != 0.0) row.terms.push_back({model.x_var(f, p), c});
      }
    }
    row.terms.push_back({model.gamma_var(), -1.0});
    prog.rows.push_back(std::move(row));
  }

  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t p = 0; p < np; ++p) {
      prog.rows.push_back(
          {{{model.x_var(f, p), 1.0}, {model.y_var(f), -1.0}}, RowSense::kLessEqual, 0.0});
    }
  }
  return model;
}

void refresh_point_costs(FractionalSolution& sol, const LPModel& model) {
  sol.per_point_cost.assign(model.num_points, 0.0);
  for (std::size_t f = 0; f < model.num_facilities; ++f) {
    for (std::size_t p = 0; p < model.num_points; ++p) {
      sol.per_point_cost[p] += sol.x[f * model.num_points + p] * model.cost(f, p);
    }
  }
}

FractionalSolution solve(const LPModel& model, const SimplexOptions& opts) {
  const SimplexResult r = solve_simplex(model.program, opts);
  FractionalSolution sol;
  sol.y.assign(r.x.begin(), r.x.begin() + model.num_facilities);
  sol.x.assign(r.x.begin() + model.num_facilities, r.x.begin() + model.gamma_var());
  sol.gamma = r.x[model.gamma_var()];
  sol.duals = r.duals;
  sol.pivots = r.pivots;
  refresh_point_costs(sol, model);
  return sol;
}

FractionalSolution integral_solution(const Instance& inst, const LPModel& model,
                                     const CenterSet& centers) {
  if (centers.size() != model.k) throw InputError("integral solution needs exactly k centers");
  FractionalSolution sol;
  sol.y.assign(model.num_facilities, 0.0);
  for (std::size_t f : centers) sol.y[f] = 1.0;
  sol.x.assign(model.num_facilities * model.num_points, 0.0);
  for (std::size_t p = 0; p < model.num_points; ++p) {
    sol.x[nearest_center(inst, centers, p) * model.num_points + p] = 1.0;
  }
  sol.gamma = fair_cost(inst, centers).value;
  refresh_point_costs(sol, model);
  return sol;
}

double FeasibilityReport::max_residual() const {
  return std::max({k_sum, point_sum, group_cost, pair_bound, nonnegativity});
}

FeasibilityReport check_feasibility(const FractionalSolution& sol, const LPModel& model,
                                    double tolerance) {
  const std::size_t nf = model.num_facilities;
  const std::size_t np = model.num_points;
  if (sol.y.size() != nf || sol.x.size() != nf * np) {
    throw InputError("fractional solution does not match the model dimensions");
  }
  FeasibilityReport rep;
  auto flag = [&](std::size_t row, double residual) {
    if (residual > tolerance) rep.violated_rows.push_back(row);
  };

  double ysum = 0.0;
  for (double v : sol.y) ysum += v;
  rep.k_sum = std::abs(ysum - static_cast<double>(model.k));
  flag(model.k_row(), rep.k_sum);

  for (std::size_t p = 0; p < np; ++p) {
    double s = 0.0;
    for (std::size_t f = 0; f < nf; ++f) s += sol.x[f * np + p];
    const double res = std::abs(s - 1.0);
    rep.point_sum = std::max(rep.point_sum, res);
    flag(model.point_row(p), res);
  }

  std::vector<double> group_cost(model.num_groups, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t p = 0; p < np; ++p) {
      if (model.point_group[p] >= 0) group_cost[model.point_group[p]] += sol.x[f * np + p] * model.cost(f, p);
    }
  }
  for (std::size_t j = 0; j < model.num_groups; ++j) {
    const double res = std::max(0.0, group_cost[j] - sol.gamma);
    rep.group_cost = std::max(rep.group_cost, res);
    flag(model.group_row(j), res);
  }

  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t p = 0; p < np; ++p) {
      const double res = std::max(0.0, sol.x[f * np + p] - sol.y[f]);
      rep.pair_bound = std::max(rep.pair_bound, res);
      flag(model.pair_row(f, p), res);
    }
  }

  double negative = std::max(0.0, -sol.gamma);
  for (double v : sol.y) negative = std::max(negative, -v);
  for (double v : sol.x) negative = std::max(negative, -v);
  rep.nonnegativity = negative;
  return rep;
}

void write_lp_text(std::ostream& out, const LPModel& model) {
  const auto name = [&](std::size_t var) -> std::string {
    if (var < model.num_facilities) return "y" + std::to_string(var);
    if (var == model.gamma_var()) return "gamma";
    const std::size_t idx = var - model.num_facilities;
    return "x" + std::to_string(idx / model.num_points) + "_" +
           std::to_string(idx % model.num_points);
  };
  const auto row_name = [&](std::size_t r) -> std::string {
    if (r == model.k_row()) return "open";
    if (r < model.group_row(0)) return "assign_" + std::to_string(r - 1);
    if (r < model.pair_row(0, 0)) return "group_" + std::to_string(r - model.group_row(0));
    const std::size_t idx = r - model.pair_row(0, 0);
    return "link_" + std::to_string(idx / model.num_points) + "_" +
           std::to_string(idx % model.num_points);
  };

  const auto old_precision = out.precision(17);
  out << "\\ fair clustering LP relaxation: " << model.num_facilities << " facilities, "
      << model.num_points << " points, " << model.num_groups << " groups, k = " << model.k
      << "\n";
  out << "Minimize\n obj: gamma\nSubject To\n";
  const auto& rows = model.program.rows;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << " " << row_name(r) << ":";
    bool first = true;
    for (const auto& [var, coef] : rows[r].terms) {
      if (coef < 0.0) {
        out << " - ";
      } else if (!first) {
        out << " + ";
      } else {
        out << " ";
      }
      if (std::abs(coef) != 1.0) out << std::abs(coef) << " ";
      out << name(var);
      first = false;
    }
    switch (rows[r].sense) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kEqual: out << " = "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
    }
    out << rows[r].rhs << "\n";
  }
  out << "Bounds\n";
  for (std::size_t v = 0; v < model.num_vars(); ++v) {
    if (model.program.fixed_zero[v]) out << " " << name(v) << " = 0\n";
  }
  out << "End\n";
  out.precision(old_precision);
}

}  // namespace fairclust::lp
