#include "fairclust/simplex.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fairclust/error.hpp"

namespace fairclust {
namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& opts) : opts_(opts) {
    m_ = lp.rows.size();
    n_ = lp.num_vars;

    // Slack/surplus columns follow the structural ones; artificials come last
    // so Bland's lowest-index rule prefers real columns.
    std::size_t slack_count = 0;
    std::size_t artificial_count = 0;
    flipped_.resize(m_);
    sense_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      RowSense s = lp.rows[i].sense;
      flipped_[i] = lp.rows[i].rhs < 0.0;
      if (flipped_[i] && s != RowSense::kEqual) {
        s = s == RowSense::kLessEqual ? RowSense::kGreaterEqual : RowSense::kLessEqual;
      }
      sense_[i] = s;
      if (s != RowSense::kEqual) ++slack_count;
      if (s != RowSense::kLessEqual) ++artificial_count;
    }
    first_artificial_ = n_ + slack_count;
    cols_ = first_artificial_ + artificial_count;
    width_ = cols_ + 1;

    table_.assign(m_ * width_, 0.0);
    basis_.resize(m_);
    identity_col_.resize(m_);
    barred_.assign(cols_, false);
    for (std::size_t j = 0; j < n_ && j < lp.fixed_zero.size(); ++j) barred_[j] = lp.fixed_zero[j];

    std::size_t next_slack = n_;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = flipped_[i] ? -1.0 : 1.0;
      for (const auto& [var, coef] : lp.rows[i].terms) {
        if (var >= n_) throw InputError("linear row references variable out of range");
        at(i, var) += sign * coef;
      }
      at(i, cols_) = sign * lp.rows[i].rhs;
      switch (sense_[i]) {
        case RowSense::kLessEqual:
          at(i, next_slack) = 1.0;
          identity_col_[i] = next_slack++;
          break;
        case RowSense::kGreaterEqual:
          at(i, next_slack++) = -1.0;
          at(i, next_artificial) = 1.0;
          identity_col_[i] = next_artificial++;
          break;
        case RowSense::kEqual:
          at(i, next_artificial) = 1.0;
          identity_col_[i] = next_artificial++;
          break;
      }
      basis_[i] = identity_col_[i];
    }
    reduced_.assign(width_, 0.0);
  }

  SimplexResult solve(const LinearProgram& lp) {
    // Phase 1: minimize the sum of artificials.
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = first_artificial_; j < cols_; ++j) cost[j] = 1.0;
    price(cost);
    iterate();
    const double infeasibility = -reduced_[cols_];
    if (infeasibility > opts_.feasibility_tolerance) {
      throw SolverError("linear program is infeasible (phase-1 residual " +
                        std::to_string(infeasibility) + ")");
    }
    drive_out_artificials();

    // Phase 2 on the original objective with artificials barred.
    for (std::size_t j = first_artificial_; j < cols_; ++j) barred_[j] = true;
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp.objective[j];
    price(cost);
    iterate();

    SimplexResult result;
    result.pivots = pivots_;
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.x[basis_[i]] = std::max(0.0, at(i, cols_));
    }
    result.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      const double y = -reduced_[identity_col_[i]];
      result.duals[i] = flipped_[i] ? -y : y;
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < n_; ++j) result.objective += lp.objective[j] * result.x[j];
    return result;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return table_[i * width_ + j]; }

  void price(const std::vector<double>& cost) {
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
    reduced_[cols_] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &table_[i * width_];
      for (std::size_t j = 0; j <= cols_; ++j) reduced_[j] -= cb * row[j];
    }
  }

  void iterate() {
    std::vector<char> is_basic(cols_, 0);
    for (std::size_t b : basis_) is_basic[b] = 1;
    for (;;) {
      std::size_t entering = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!barred_[j] && !is_basic[j] && reduced_[j] < -opts_.optimality_tolerance) {
          entering = j;
          break;
        }
      }
      if (entering == cols_) return;

      std::size_t leaving = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, entering);
        if (a <= opts_.pivot_tolerance) continue;
        const double ratio = std::max(0.0, at(i, cols_)) / a;
        const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
        if (leaving == m_ || ratio < best_ratio - slack) {
          best_ratio = ratio;
          leaving = i;
        } else if (ratio <= best_ratio + slack && basis_[i] < basis_[leaving]) {
          best_ratio = std::min(best_ratio, ratio);
          leaving = i;
        }
      }
      if (leaving == m_) throw SolverError("linear program is unbounded");

      is_basic[basis_[leaving]] = 0;
      is_basic[entering] = 1;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    if (++pivots_ > opts_.max_pivots) {
      throw ResourceCapError("simplex exceeded " + std::to_string(opts_.max_pivots) +
                             " pivots (rows " + std::to_string(m_) + ", columns " +
                             std::to_string(cols_) + ")");
    }
    double* prow = &table_[r * width_];
    const double inv = 1.0 / prow[c];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    prow[c] = 1.0;

    auto eliminate = [&](double* row) {
      const double factor = row[c];
      if (factor == 0.0) return;
      for (std::size_t j : nonzero_) row[j] -= factor * prow[j];
      row[c] = 0.0;
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(&table_[i * width_]);
    }
    eliminate(reduced_.data());
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      at(i, cols_) = 0.0;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!barred_[j] && std::abs(at(i, j)) > opts_.pivot_tolerance) {
          pivot(i, j);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  SimplexOptions opts_;
  std::size_t m_ = 0, n_ = 0, cols_ = 0, width_ = 0, first_artificial_ = 0;
  std::vector<double> table_;
  std::vector<double> reduced_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> identity_col_;
  std::vector<bool> barred_;
  std::vector<bool> flipped_;
  std::vector<RowSense> sense_;
  std::vector<std::size_t> nonzero_;
  std::size_t pivots_ = 0;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& opts) {
  if (lp.objective.size() != lp.num_vars) {
    throw InputError("objective length does not match the number of variables");
  }
  Tableau tableau(lp, opts);
  return tableau.solve(lp);
}

}  // namespace fairclust
