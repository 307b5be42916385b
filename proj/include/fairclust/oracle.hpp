#pragma once

#include <cstddef>
#include <cstdint>

#include "fairclust/core.hpp"

namespace fairclust::oracle {

struct OracleOptions {
  std::uint64_t cap = 1000000;
  std::size_t workers = 1;
};

struct OracleResult {
  double opt_cost = 0.0;
  CenterSet opt_set;
  std::uint64_t enumerated = 0;
};

// Exact min over all size-k subsets of F of the fair cost (ties: the
// lexicographically smallest subset).
OracleResult brute_force_fair(const Instance& inst, const OracleOptions& opts = {});

// Exact min over all size-k subsets of F of Σ_j cost(C, P_j).
OracleResult brute_force_unconstrained(const Instance& inst, const OracleOptions& opts = {});

}  // namespace fairclust::oracle
