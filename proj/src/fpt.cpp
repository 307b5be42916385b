#include "fairclust/fpt.hpp"

#include <chrono>
#include <cmath>

#include "fairclust/error.hpp"
#include "fairclust/lp.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/subsets.hpp"

namespace fairclust::fpt {

SubsetSearchResult subset_search(const Instance& inst, const CenterSet& candidates, std::size_t k,
                                 const SearchOptions& opts) {
  if (k == 0) throw InputError("subset size k must be positive");
  if (candidates.size() < k) {
    throw InputError("candidate set has " + std::to_string(candidates.size()) +
                     " centers, fewer than k = " + std::to_string(k));
  }
  if (candidates.facilities().back() >= inst.num_facilities()) {
    throw InputError("candidate set references an unknown facility");
  }
  const SubsetScorer scorer(inst, candidates.facilities());
  const BestSubset best = minimize_over_subsets(
      candidates.size(), k, opts.cap, opts.workers,
      [&](std::span<const std::size_t> positions, std::vector<double>& scratch) {
        return scorer.fair(positions, scratch);
      });

  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  for (std::size_t pos : best.positions) chosen.push_back(candidates.facilities()[pos]);
  SubsetSearchResult out;
  out.centers = CenterSet(std::move(chosen));
  out.cost = fair_cost(inst, out.centers);
  out.enumerated = best.enumerated;
  return out;
}

namespace {
using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}
}  // namespace

SolveReport solve(const Instance& inst, double epsilon_prime, std::uint64_t seed,
                  const SolveOptions& opts) {
  if (!(epsilon_prime > 0.0 && epsilon_prime <= 1.0)) {
    throw InputError("epsilon must lie in (0, 1]");
  }
  const auto start = Clock::now();
  SolveReport report;
  report.epsilon_requested = epsilon_prime;
  report.epsilon_internal = epsilon_prime / std::pow(3.0, inst.z() - 1.0);
  report.rng_seed = seed;

  auto stage = Clock::now();
  const Instance disjoint = split_overlapping_groups(inst);
  report.wall_times.split = seconds_since(stage);

  stage = Clock::now();
  const lp::LPModel model = lp::build_model(disjoint);
  const lp::FractionalSolution frac = lp::solve(model);
  report.gamma_star = frac.gamma;
  report.wall_times.lp = seconds_since(stage);

  stage = Clock::now();
  report.bicriteria = rounding::amplify(disjoint, frac, report.epsilon_internal, seed,
                                        {opts.workers, opts.keep_traces});
  report.bicriteria_set_size = report.bicriteria.centers.size();
  report.amplify_runs = report.bicriteria.runs;
  report.iterations_per_run = report.bicriteria.iterations_per_run;
  report.wall_times.amplify = seconds_since(stage);

  stage = Clock::now();
  const SubsetSearchResult best =
      subset_search(disjoint, report.bicriteria.centers, inst.k(), {opts.enumeration_cap, opts.workers});
  report.solution = best.centers;
  report.subsets_enumerated = best.enumerated;
  report.wall_times.subset_search = seconds_since(stage);

  // Facilities are untouched by the split, so the set applies to the input.
  const FairCost cost = fair_cost(inst, report.solution);
  report.fair_cost = cost.value;
  report.per_group_costs = cost.per_group;
  report.argmax_group = cost.argmax_group;

  if (binomial(inst.num_facilities(), inst.k()) <= opts.oracle_cap) {
    stage = Clock::now();
    report.oracle_opt = oracle::brute_force_fair(inst, {opts.oracle_cap, opts.workers}).opt_cost;
    report.wall_times.oracle = seconds_since(stage);
  }
  report.wall_times.total = seconds_since(start);
  return report;
}

}  // namespace fairclust::fpt
