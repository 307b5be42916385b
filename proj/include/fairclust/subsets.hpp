#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fairclust/core.hpp"

namespace fairclust {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// The rank-th k-subset of {0..n-1} in lexicographic order.
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank);

// Advances to the lexicographic successor; false after the last subset.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n);

// Per-(candidate, group member) cost table used to score k-subsets of a
// candidate facility list in O(n·k) each.
class SubsetScorer {
 public:
  SubsetScorer(const Instance& inst, std::vector<std::size_t> candidates);

  // max_j Σ_{p∈P_j} min_{c∈subset} cost. `scratch` is per-thread storage.
  double fair(std::span<const std::size_t> positions, std::vector<double>& scratch) const;
  // Σ_j Σ_{p∈P_j} min_{c∈subset} cost.
  double unconstrained(std::span<const std::size_t> positions) const;

  const std::vector<std::size_t>& candidates() const { return candidates_; }
  std::size_t num_groups() const { return num_groups_; }

 private:
  std::vector<std::size_t> candidates_;
  std::size_t num_groups_ = 0;
  std::size_t num_entries_ = 0;
  std::vector<std::size_t> entry_group_;
  std::vector<double> cost_;  // candidate-major
};

struct BestSubset {
  std::vector<std::size_t> positions;  // indices into the candidate list
  double cost = 0.0;
  std::uint64_t enumerated = 0;
};

using SubsetObjective =
    std::function<double(std::span<const std::size_t>, std::vector<double>& scratch)>;

// Exhaustive minimum over all k-subsets of {0..n-1}. The lexicographic order
// is cut into `workers` contiguous chunks; the global minimum keeps the
// lexicographically smallest subset among ties, so the result does not depend
// on the worker count. Throws ResourceCapError when C(n, k) > cap.
BestSubset minimize_over_subsets(std::size_t n, std::size_t k, std::uint64_t cap,
                                 std::size_t workers, const SubsetObjective& objective);

}  // namespace fairclust
