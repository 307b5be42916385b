#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairclust/core.hpp"

namespace fairclust::gen {

struct EuclideanParams {
  std::size_t num_points = 10;
  std::size_t num_facilities = 5;
  std::size_t dim = 2;
  std::size_t num_groups = 2;
  std::size_t k = 2;
  double z = 1.0;
  double weight_min = 1.0;
  double weight_max = 1.0;
  std::uint64_t seed = 0;
};

// Points and facilities uniform in [0,1]^dim; each point joins a uniformly
// random group, then empty groups take the last member of the currently
// largest group.
Instance random_euclidean(const EuclideanParams& params);

struct SetCoverageInstance {
  std::vector<std::string> universe;
  std::vector<std::vector<std::size_t>> sets;  // indices into universe
  std::size_t k = 1;
  std::optional<bool> is_yes;

  bool operator==(const SetCoverageInstance&) const = default;
};

// True iff some min(k, m) sets cover the universe. Throws ResourceCapError when
// more than `cap` combinations would be scanned.
bool exhaustive_cover_check(const SetCoverageInstance& sc, std::uint64_t cap = 1000000);

// k planted sets partitioning the universe plus num_sets - k random decoys,
// shuffled. With make_no, one element is removed from every set. is_yes is
// always filled in by exhaustive_cover_check.
SetCoverageInstance planted_set_coverage(std::size_t universe_size, std::size_t num_sets,
                                         std::size_t k, bool make_no, std::uint64_t seed);

// Every set includes each element independently with probability `density`.
SetCoverageInstance random_set_coverage(std::size_t universe_size, std::size_t num_sets,
                                        std::size_t k, double density, std::uint64_t seed);

// k-supplier gap instance: one facility c_i per set, one point x_e per
// element; d(x_e, x_e′) = d(c_i, c_j) = 2, d(x_e, c_i) = 1 if e ∈ S_i else 3;
// singleton unit-weight groups. OPT is 1 on YES instances and 3^z otherwise.
Instance reduce_set_coverage(const SetCoverageInstance& sc, double z);

// One unit-weight group per point, named after it.
Instance singleton_groups(const Instance& inst);

}  // namespace fairclust::gen
