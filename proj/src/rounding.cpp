#include "fairclust/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fairclust/baseline.hpp"
#include "fairclust/error.hpp"
#include "fairclust/random.hpp"
#include "parallel.hpp"

namespace fairclust::rounding {

namespace {
constexpr double kInputTolerance = 1e-6;

void require_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in (0, 1]");
}
}  // namespace

double rounding_constant(double z) { return std::max(baseline::local_search_constant(z), 1.0); }

std::size_t phase1_iterations(std::size_t k, std::size_t n, double c, double epsilon) {
  require_epsilon(epsilon);
  const double t = static_cast<double>(k) * std::log(2.0 * c * static_cast<double>(n) / epsilon);
  return static_cast<std::size_t>(std::ceil(std::max(t, 1.0)));
}

std::size_t amplification_runs(std::size_t n, double epsilon) {
  require_epsilon(epsilon);
  const double r = 8.0 * std::log(static_cast<double>(n)) / epsilon;
  return static_cast<std::size_t>(std::ceil(std::max(r, 1.0)));
}

RandomizedRounding::RandomizedRounding(const Instance& inst, const lp::FractionalSolution& frac,
                                       double epsilon)
    : inst_(&inst), epsilon_(epsilon) {
  require_epsilon(epsilon);
  if (!inst.groups_disjoint()) throw InputError("rounding requires disjoint groups");
  const std::size_t nf = inst.num_facilities();
  const std::size_t np = inst.num_points();
  if (frac.y.size() != nf || frac.x.size() != nf * np) {
    throw InputError("fractional solution does not match the instance");
  }
  const double k = static_cast<double>(inst.k());

  double ysum = 0.0;
  for (double v : frac.y) ysum += std::max(0.0, v);
  if (std::abs(ysum - k) > kInputTolerance) {
    throw InputError("fractional solution violates Σ y_f = k (sum " + std::to_string(ysum) + ")");
  }

  prob_.resize(nf);
  cumulative_.resize(nf);
  double acc = 0.0;
  for (std::size_t f = 0; f < nf; ++f) {
    prob_[f] = std::max(0.0, frac.y[f]) / k;
    acc += prob_[f];
    cumulative_[f] = acc;
  }
  if (std::abs(acc - 1.0) > kInputTolerance) {
    throw InputError("sampling distribution {y_f/k} does not sum to 1");
  }

  ratio_.assign(nf * np, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    double xsum = 0.0;
    for (std::size_t f = 0; f < nf; ++f) xsum += std::max(0.0, frac.x[f * np + p]);
    if (std::abs(xsum - 1.0) > kInputTolerance) {
      throw InputError("fractional solution violates Σ_f x_{f,p} = 1 at point " +
                       inst.point_ids()[p]);
    }
    for (std::size_t f = 0; f < nf; ++f) {
      const double x = std::max(0.0, frac.x[f * np + p]) / xsum;
      if (x == 0.0) continue;
      const double y = std::max(0.0, frac.y[f]);
      if (x > y + kInputTolerance) {
        throw InputError("fractional solution violates x_{f,p} <= y_f");
      }
      ratio_[f * np + p] = std::min(1.0, x / y);
    }
  }

  constant_ = rounding_constant(inst.z());
  iterations_ = phase1_iterations(inst.k(), inst.num_elements(), constant_, epsilon);
  phase2_ = baseline::ell_approx(inst);
}

std::size_t RandomizedRounding::sample_facility(double u) const {
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t f = static_cast<std::size_t>(it - cumulative_.begin());
  if (f == cumulative_.size()) {
    // u·total rounded onto the last prefix sum: take the last facility with mass.
    f = cumulative_.size() - 1;
    while (prob_[f] == 0.0) --f;
  }
  if (prob_[f] <= 0.0) throw SolverError("sampled a facility with y_f = 0");
  return f;
}

double RandomizedRounding::assignment_probability(std::size_t p) const {
  const std::size_t np = inst_->num_points();
  double total = 0.0;
  for (std::size_t f = 0; f < prob_.size(); ++f) total += ratio_[f * np + p] * prob_[f];
  return total;
}

RoundingResult RandomizedRounding::run(std::uint64_t seed, bool record_iterations) const {
  const Instance& inst = *inst_;
  const std::size_t np = inst.num_points();
  Rng rng(seed);

  RoundingResult out;
  RoundingTrace& trace = out.trace;
  trace.assigned_iteration.assign(np, 0);
  trace.assigned_center.assign(np, 0);
  trace.unassigned_after.reserve(iterations_);

  std::vector<std::size_t> unassigned(np);
  for (std::size_t p = 0; p < np; ++p) unassigned[p] = p;
  std::vector<std::size_t> sampled;
  sampled.reserve(iterations_);

  for (std::size_t i = 0; i < iterations_; ++i) {
    const std::size_t f = sample_facility(rng.uniform());
    sampled.push_back(f);
    IterationRecord rec{f, {}};
    std::size_t kept = 0;
    for (std::size_t p : unassigned) {
      if (rng.uniform() < ratio_[f * np + p]) {
        trace.assigned_iteration[p] = i + 1;
        trace.assigned_center[p] = f;
        if (record_iterations) rec.newly_assigned.push_back(p);
      } else {
        unassigned[kept++] = p;
      }
    }
    unassigned.resize(kept);
    trace.unassigned_after.push_back(kept);
    if (record_iterations) trace.iterations.push_back(std::move(rec));
  }

  for (std::size_t p : unassigned) trace.assigned_center[p] = nearest_center(inst, phase2_, p);
  trace.phase2_points = std::move(unassigned);
  trace.phase2_centers = phase2_;
  out.centers = CenterSet(std::move(sampled)).united(phase2_);
  return out;
}

RoundingResult randomized_subroutine(const Instance& inst, const lp::FractionalSolution& frac,
                                     double epsilon, std::uint64_t seed) {
  return RandomizedRounding(inst, frac, epsilon).run(seed);
}

AmplifyResult amplify(const Instance& inst, const lp::FractionalSolution& frac, double epsilon,
                      std::uint64_t seed, const AmplifyOptions& opts) {
  const RandomizedRounding rounding(inst, frac, epsilon);
  AmplifyResult out;
  out.runs = amplification_runs(inst.num_elements(), epsilon);
  out.iterations_per_run = rounding.iterations();
  out.constant = rounding.constant();
  out.size_bound = out.runs * (out.iterations_per_run + inst.k());

  std::vector<RoundingResult> results(out.runs);
  detail::parallel_for(out.runs, opts.workers, [&](std::size_t i) {
    results[i] = rounding.run(derive_seed(seed, i), opts.keep_traces);
  });

  std::vector<std::size_t> merged;
  out.run_sizes.reserve(out.runs);
  for (const auto& r : results) {
    out.run_sizes.push_back(r.centers.size());
    merged.insert(merged.end(), r.centers.begin(), r.centers.end());
  }
  out.centers = CenterSet(std::move(merged));
  if (opts.keep_traces) out.run_results = std::move(results);
  return out;
}

GroupExpectation estimate_group_expectation(const Instance& inst,
                                            const lp::FractionalSolution& frac, double epsilon,
                                            std::size_t n_trials, std::uint64_t seed,
                                            std::size_t workers) {
  if (n_trials < 100) throw InputError("expectation estimate needs at least 100 trials");
  const RandomizedRounding rounding(inst, frac, epsilon);
  const std::size_t groups = inst.num_groups();
  std::vector<double> costs(n_trials * groups);
  detail::parallel_for(n_trials, workers, [&](std::size_t t) {
    const CenterSet c = rounding.run(derive_seed(seed, t), false).centers;
    for (std::size_t j = 0; j < groups; ++j) {
      costs[t * groups + j] = cluster_cost(inst, c, inst.groups()[j]);
    }
  });

  GroupExpectation out;
  out.trials = n_trials;
  out.mean.assign(groups, 0.0);
  out.std_error.assign(groups, 0.0);
  const double n = static_cast<double>(n_trials);
  for (std::size_t j = 0; j < groups; ++j) {
    double sum = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) sum += costs[t * groups + j];
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const double dev = costs[t * groups + j] - mean;
      ss += dev * dev;
    }
    out.mean[j] = mean;
    out.std_error[j] = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

double SurvivalStatistics::empirical(std::size_t iteration, std::size_t p) const {
  return static_cast<double>(unassigned[iteration - 1][p]) / static_cast<double>(trials);
}

double SurvivalStatistics::theory(std::size_t iteration) const {
  return std::pow(1.0 - 1.0 / static_cast<double>(k), static_cast<double>(iteration));
}

double SurvivalStatistics::std_error(std::size_t iteration) const {
  const double q = theory(iteration);
  return std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

SurvivalStatistics survival_statistics(const Instance& inst, const lp::FractionalSolution& frac,
                                       double epsilon, std::size_t n_trials, std::uint64_t seed,
                                       std::size_t workers) {
  if (n_trials == 0) throw InputError("survival statistics need at least one trial");
  const RandomizedRounding rounding(inst, frac, epsilon);
  const std::size_t np = inst.num_points();
  const std::size_t t_max = rounding.iterations();

  // Per-trial assignment iterations, reduced serially for determinism.
  std::vector<std::size_t> assigned_at(n_trials * np);
  detail::parallel_for(n_trials, workers, [&](std::size_t t) {
    const RoundingResult r = rounding.run(derive_seed(seed, t), false);
    std::copy(r.trace.assigned_iteration.begin(), r.trace.assigned_iteration.end(),
              assigned_at.begin() + static_cast<std::ptrdiff_t>(t * np));
  });

  SurvivalStatistics out;
  out.trials = n_trials;
  out.k = inst.k();
  out.unassigned.assign(t_max, std::vector<std::uint64_t>(np, 0));
  for (std::size_t t = 0; t < n_trials; ++t) {
    for (std::size_t p = 0; p < np; ++p) {
      const std::size_t at = assigned_at[t * np + p];
      const std::size_t survived = at == 0 ? t_max : at - 1;  // unassigned after 1..survived
      for (std::size_t i = 0; i < survived; ++i) ++out.unassigned[i][p];
    }
  }
  return out;
}

}  // namespace fairclust::rounding
