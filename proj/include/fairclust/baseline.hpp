#pragma once

#include <cstddef>

#include "fairclust/core.hpp"

namespace fairclust::baseline {

struct BaselineConfig {
  std::size_t max_swap_rounds = 1000;
  double improvement_threshold = 1e-4;  // relative, in (0, 1)
};

// Proven approximation factor c′ of single-swap local search for the
// unconstrained objective: 5 for z = 1, 25 for z = 2, 5·3^z otherwise.
double local_search_constant(double z);

// Farthest-point seeding over F (starting at facility 0) followed by
// best-improvement single-swap local search on Σ_j cost(C, P_j). Stops when no
// swap lowers the cost by more than improvement_threshold·cost.
CenterSet unconstrained_local_search(const Instance& inst, std::size_t k,
                                     const BaselineConfig& cfg = {});

// O(ℓ)-approximation for the fair objective: fair_cost ≤ c′·ℓ·OPT.
CenterSet ell_approx(const Instance& inst, const BaselineConfig& cfg = {});

}  // namespace fairclust::baseline
