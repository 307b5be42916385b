#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fairclust/core.hpp"
#include "fairclust/lp.hpp"

namespace fairclust::rounding {

struct IterationRecord {
  std::size_t facility;                      // sampled f*
  std::vector<std::size_t> newly_assigned;   // points assigned to f* this iteration
};

struct RoundingTrace {
  std::vector<IterationRecord> iterations;
  std::vector<std::size_t> unassigned_after;    // |P_u| after each Phase-1 iteration
  std::vector<std::size_t> assigned_iteration;  // per point: 1-based iteration, 0 = Phase 2
  std::vector<std::size_t> assigned_center;     // per point
  std::vector<std::size_t> phase2_points;
  CenterSet phase2_centers;
};

struct RoundingResult {
  CenterSet centers;
  RoundingTrace trace;
};

// c = max(c′, 1) with c′ the Phase-2 fallback's approximation constant.
double rounding_constant(double z);
// ⌈k·ln(2c·n/ε)⌉
std::size_t phase1_iterations(std::size_t k, std::size_t n, double c, double epsilon);
// ⌈8·ln(n)/ε⌉
std::size_t amplification_runs(std::size_t n, double epsilon);

// Two-phase randomized rounding of an LP solution. Phase 1 draws a facility
// f* from {y_f/k} and assigns each still-unassigned point p to it with
// probability x_{f*,p}/y_{f*}; after the fixed number of iterations, Phase 2
// hands the survivors to the O(ℓ)-approximate center set.
//
// Holds a reference to `inst`, which must outlive this object. Groups must be
// disjoint. x is renormalized per point before sampling.
class RandomizedRounding {
 public:
  RandomizedRounding(const Instance& inst, const lp::FractionalSolution& frac, double epsilon);

  RoundingResult run(std::uint64_t seed, bool record_iterations = true) const;

  std::size_t iterations() const { return iterations_; }
  double constant() const { return constant_; }
  double epsilon() const { return epsilon_; }
  const CenterSet& phase2_centers() const { return phase2_; }

  // Σ_f (x_{f,p}/y_f)·(y_f/k) under the sampler's probabilities.
  double assignment_probability(std::size_t p) const;

 private:
  std::size_t sample_facility(double u) const;

  const Instance* inst_;
  double epsilon_;
  double constant_;
  std::size_t iterations_;
  std::vector<double> prob_;        // y_f / k
  std::vector<double> cumulative_;  // prefix sums of prob_
  std::vector<double> ratio_;       // x_{f,p}/y_f in [0, 1], facility-major
  CenterSet phase2_;
};

RoundingResult randomized_subroutine(const Instance& inst, const lp::FractionalSolution& frac,
                                     double epsilon, std::uint64_t seed);

struct AmplifyOptions {
  std::size_t workers = 1;
  bool keep_traces = false;
};

struct AmplifyResult {
  CenterSet centers;                 // union over all runs
  std::size_t runs = 0;              // r
  std::size_t iterations_per_run = 0;
  double constant = 0.0;             // c
  std::size_t size_bound = 0;        // r·(t + k)
  std::vector<std::size_t> run_sizes;
  std::vector<RoundingResult> run_results;  // only with keep_traces
};

// Union of ⌈8·ln(n)/ε⌉ independent rounding runs; run i is seeded with
// derive_seed(seed, i). The union is independent of the worker count.
AmplifyResult amplify(const Instance& inst, const lp::FractionalSolution& frac, double epsilon,
                      std::uint64_t seed, const AmplifyOptions& opts = {});

struct GroupExpectation {
  std::size_t trials = 0;
  std::vector<double> mean;      // per group, E[cost(C′, P_j)]
  std::vector<double> std_error;
};

// Monte Carlo estimate over n_trials ≥ 100 independent rounding runs.
GroupExpectation estimate_group_expectation(const Instance& inst,
                                            const lp::FractionalSolution& frac, double epsilon,
                                            std::size_t n_trials, std::uint64_t seed,
                                            std::size_t workers = 1);

struct SurvivalStatistics {
  std::size_t trials = 0;
  std::size_t k = 0;
  // unassigned[i][p]: runs in which point p was still unassigned after
  // iteration i + 1.
  std::vector<std::vector<std::uint64_t>> unassigned;

  double empirical(std::size_t iteration, std::size_t p) const;
  double theory(std::size_t iteration) const;  // (1 - 1/k)^i
  double std_error(std::size_t iteration) const;
};

SurvivalStatistics survival_statistics(const Instance& inst, const lp::FractionalSolution& frac,
                                       double epsilon, std::size_t n_trials, std::uint64_t seed,
                                       std::size_t workers = 1);

}  // namespace fairclust::rounding
