#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fairclust/core.hpp"
#include "fairclust/rounding.hpp"

namespace fairclust::fpt {

struct SearchOptions {
  std::uint64_t cap = 100000000;
  std::size_t workers = 1;
};

struct SubsetSearchResult {
  CenterSet centers;
  FairCost cost;
  std::uint64_t enumerated = 0;
};

// Best size-k subset of `candidates` under the fair cost, scanning all
// C(|candidates|, k) subsets in lexicographic order (ties: first found).
SubsetSearchResult subset_search(const Instance& inst, const CenterSet& candidates, std::size_t k,
                                 const SearchOptions& opts = {});

struct SolveOptions {
  std::uint64_t enumeration_cap = 100000000;
  std::uint64_t oracle_cap = 1000000;
  std::size_t workers = 1;
  bool keep_traces = false;
};

struct StageTimes {
  double split = 0.0;
  double lp = 0.0;
  double amplify = 0.0;
  double subset_search = 0.0;
  double oracle = 0.0;
  double total = 0.0;
};

struct SolveReport {
  CenterSet solution;
  double fair_cost = 0.0;
  std::vector<double> per_group_costs;
  std::size_t argmax_group = 0;
  std::size_t bicriteria_set_size = 0;
  std::uint64_t subsets_enumerated = 0;
  double gamma_star = 0.0;
  std::optional<double> oracle_opt;
  double epsilon_requested = 0.0;
  double epsilon_internal = 0.0;  // ε′ / 3^{z-1}
  std::uint64_t rng_seed = 0;
  std::size_t amplify_runs = 0;
  std::size_t iterations_per_run = 0;
  StageTimes wall_times;
  rounding::AmplifyResult bicriteria;  // run traces only with keep_traces
};

// split groups → LP → amplified rounding at ε = ε′/3^{z-1} → subset search.
// The oracle optimum is attached when C(n_F, k) ≤ oracle_cap.
SolveReport solve(const Instance& inst, double epsilon_prime, std::uint64_t seed,
                  const SolveOptions& opts = {});

}  // namespace fairclust::fpt
