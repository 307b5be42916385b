#include "fairclust/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fairclust/error.hpp"

namespace fairclust::baseline {

double local_search_constant(double z) {
  if (z == 1.0) return 5.0;
  if (z == 2.0) return 25.0;
  return 5.0 * std::pow(3.0, z);
}

namespace {

// Weighted cost of every (facility, group member) pair, flattened over members.
struct CostTable {
  std::size_t num_entries = 0;
  std::vector<double> cost;  // facility-major

  CostTable(const Instance& inst) {
    std::vector<std::size_t> points;
    std::vector<double> weights;
    for (const auto& g : inst.groups()) {
      points.insert(points.end(), g.members.begin(), g.members.end());
      weights.insert(weights.end(), g.weights.begin(), g.weights.end());
    }
    num_entries = points.size();
    cost.resize(inst.num_facilities() * num_entries);
    for (std::size_t f = 0; f < inst.num_facilities(); ++f) {
      for (std::size_t e = 0; e < num_entries; ++e) {
        cost[f * num_entries + e] =
            cost_power(inst.facility_point_distance(f, points[e]), inst.z()) * weights[e];
      }
    }
  }

  double at(std::size_t f, std::size_t e) const { return cost[f * num_entries + e]; }

  double total(const std::vector<std::size_t>& centers) const {
    double sum = 0.0;
    for (std::size_t e = 0; e < num_entries; ++e) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c : centers) best = std::min(best, at(c, e));
      sum += best;
    }
    return sum;
  }
};

std::vector<std::size_t> farthest_point_seeding(const Instance& inst, std::size_t k) {
  const std::size_t nf = inst.num_facilities();
  std::vector<std::size_t> chosen{0};
  std::vector<double> gap(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    gap[f] = inst.distance(inst.facility_element(f), inst.facility_element(0));
  }
  std::vector<char> used(nf, 0);
  used[0] = 1;
  while (chosen.size() < k) {
    std::size_t next = nf;
    for (std::size_t f = 0; f < nf; ++f) {
      if (!used[f] && (next == nf || gap[f] > gap[next])) next = f;
    }
    chosen.push_back(next);
    used[next] = 1;
    for (std::size_t f = 0; f < nf; ++f) {
      gap[f] = std::min(gap[f], inst.distance(inst.facility_element(f), inst.facility_element(next)));
    }
  }
  return chosen;
}

}  // namespace

CenterSet unconstrained_local_search(const Instance& inst, std::size_t k,
                                     const BaselineConfig& cfg) {
  const std::size_t nf = inst.num_facilities();
  if (k < 1 || k > nf) throw InputError("local search needs 1 <= k <= number of facilities");
  if (!(cfg.improvement_threshold > 0.0 && cfg.improvement_threshold < 1.0)) {
    throw InputError("improvement threshold must lie in (0, 1)");
  }
  if (cfg.max_swap_rounds == 0) throw InputError("max_swap_rounds must be positive");
  if (k == nf) return CenterSet::all(nf);

  const CostTable table(inst);
  std::vector<std::size_t> centers = farthest_point_seeding(inst, k);
  double current = table.total(centers);

  std::vector<char> open(nf, 0);
  for (std::size_t c : centers) open[c] = 1;

  for (std::size_t round = 0; round < cfg.max_swap_rounds && current > 0.0; ++round) {
    // Best improving swap; ties go to the smallest (position, facility) pair
    // after sorting the current centers.
    std::sort(centers.begin(), centers.end());
    double best_cost = current;
    std::size_t best_pos = k, best_in = nf;
    std::vector<std::size_t> trial = centers;
    for (std::size_t pos = 0; pos < k; ++pos) {
      for (std::size_t f = 0; f < nf; ++f) {
        if (open[f]) continue;
        trial[pos] = f;
        const double c = table.total(trial);
        if (c < best_cost) {
          best_cost = c;
          best_pos = pos;
          best_in = f;
        }
      }
      trial[pos] = centers[pos];
    }
    if (best_pos == k || current - best_cost <= cfg.improvement_threshold * current) break;
    open[centers[best_pos]] = 0;
    open[best_in] = 1;
    centers[best_pos] = best_in;
    current = best_cost;
  }
  return CenterSet(std::move(centers));
}

CenterSet ell_approx(const Instance& inst, const BaselineConfig& cfg) {
  return unconstrained_local_search(inst, inst.k(), cfg);
}

}  // namespace fairclust::baseline
