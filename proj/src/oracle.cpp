#include "fairclust/oracle.hpp"

#include <numeric>

#include "fairclust/subsets.hpp"

namespace fairclust::oracle {

namespace {

template <class Score>
OracleResult exhaust(const Instance& inst, const OracleOptions& opts, Score score) {
  std::vector<std::size_t> all(inst.num_facilities());
  std::iota(all.begin(), all.end(), 0);
  const SubsetScorer scorer(inst, all);
  const BestSubset best = minimize_over_subsets(
      inst.num_facilities(), inst.k(), opts.cap, opts.workers,
      [&](std::span<const std::size_t> positions, std::vector<double>& scratch) {
        return score(scorer, positions, scratch);
      });
  return {best.cost, CenterSet(best.positions), best.enumerated};
}

}  // namespace

OracleResult brute_force_fair(const Instance& inst, const OracleOptions& opts) {
  return exhaust(inst, opts, [](const SubsetScorer& s, auto positions, auto& scratch) {
    return s.fair(positions, scratch);
  });
}

OracleResult brute_force_unconstrained(const Instance& inst, const OracleOptions& opts) {
  return exhaust(inst, opts, [](const SubsetScorer& s, auto positions, auto&) {
    return s.unconstrained(positions);
  });
}

}  // namespace fairclust::oracle
