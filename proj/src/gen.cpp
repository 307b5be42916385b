#include "fairclust/gen.hpp"

#include <algorithm>
#include <string>

#include "fairclust/error.hpp"
#include "fairclust/random.hpp"
#include "fairclust/subsets.hpp"

namespace fairclust::gen {

Instance random_euclidean(const EuclideanParams& params) {
  if (params.num_points == 0 || params.num_facilities == 0 || params.dim == 0 ||
      params.num_groups == 0 || params.k == 0) {
    throw InputError("generator counts must be positive");
  }
  if (params.k > params.num_facilities) throw InputError("k exceeds the number of facilities");
  if (params.num_groups > params.num_points) {
    throw InputError("cannot split " + std::to_string(params.num_points) + " points into " +
                     std::to_string(params.num_groups) + " nonempty groups");
  }
  if (!(params.weight_min > 0.0) || params.weight_max < params.weight_min) {
    throw InputError("weight range must satisfy 0 < min <= max");
  }

  Rng rng(params.seed);
  const std::size_t n = params.num_points + params.num_facilities;
  std::vector<std::vector<double>> coords(n, std::vector<double>(params.dim));
  for (auto& c : coords) {
    for (double& v : c) v = rng.uniform();
  }

  std::vector<std::size_t> group_of(params.num_points);
  for (auto& g : group_of) g = rng.below(params.num_groups);
  for (std::size_t j = 0; j < params.num_groups; ++j) {
    std::vector<std::size_t> sizes(params.num_groups, 0);
    for (std::size_t g : group_of) ++sizes[g];
    if (sizes[j] > 0) continue;
    const std::size_t largest =
        static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (std::size_t p = params.num_points; p-- > 0;) {
      if (group_of[p] == largest) {
        group_of[p] = j;
        break;
      }
    }
  }

  std::vector<Group> groups(params.num_groups);
  for (std::size_t j = 0; j < params.num_groups; ++j) groups[j].name = "g" + std::to_string(j);
  for (std::size_t p = 0; p < params.num_points; ++p) {
    groups[group_of[p]].members.push_back(p);
    groups[group_of[p]].weights.push_back(rng.uniform(params.weight_min, params.weight_max));
  }

  std::vector<std::string> points, facilities;
  for (std::size_t p = 0; p < params.num_points; ++p) points.push_back("p" + std::to_string(p));
  for (std::size_t f = 0; f < params.num_facilities; ++f) {
    facilities.push_back("f" + std::to_string(f));
  }
  return Instance(std::move(points), std::move(facilities), Metric::from_coords(std::move(coords)),
                  std::move(groups), params.k, params.z);
}

bool exhaustive_cover_check(const SetCoverageInstance& sc, std::uint64_t cap) {
  const std::size_t u = sc.universe.size();
  const std::size_t m = sc.sets.size();
  if (u == 0) return true;
  if (m == 0 || sc.k == 0) return false;
  const std::size_t k = std::min(sc.k, m);
  if (binomial(m, k) > cap) {
    throw ResourceCapError("cover check would scan more than " + std::to_string(cap) +
                           " combinations");
  }

  const std::size_t words = (u + 63) / 64;
  std::vector<std::vector<std::uint64_t>> masks(m, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t e : sc.sets[i]) {
      if (e >= u) throw InputError("set references an element outside the universe");
      masks[i][e / 64] |= 1ULL << (e % 64);
    }
  }
  std::vector<std::uint64_t> full(words, ~0ULL);
  if (u % 64) full.back() = (1ULL << (u % 64)) - 1;

  std::vector<std::size_t> combo = unrank_combination(m, k, 0);
  std::vector<std::uint64_t> acc(words);
  do {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i : combo) {
      for (std::size_t w = 0; w < words; ++w) acc[w] |= masks[i][w];
    }
    if (acc == full) return true;
  } while (next_combination(combo, m));
  return false;
}

namespace {

SetCoverageInstance empty_coverage(std::size_t universe_size, std::size_t num_sets,
                                   std::size_t k) {
  if (universe_size == 0) throw InputError("universe must be nonempty");
  if (k == 0 || k > num_sets) throw InputError("set coverage needs 1 <= k <= number of sets");
  SetCoverageInstance sc;
  for (std::size_t e = 0; e < universe_size; ++e) sc.universe.push_back("e" + std::to_string(e));
  sc.k = k;
  return sc;
}

}  // namespace

SetCoverageInstance planted_set_coverage(std::size_t universe_size, std::size_t num_sets,
                                         std::size_t k, bool make_no, std::uint64_t seed) {
  SetCoverageInstance sc = empty_coverage(universe_size, num_sets, k);
  Rng rng(seed);
  sc.sets.assign(num_sets, {});
  for (std::size_t e = 0; e < universe_size; ++e) sc.sets[rng.below(k)].push_back(e);
  for (std::size_t i = k; i < num_sets; ++i) {
    for (std::size_t e = 0; e < universe_size; ++e) {
      if (rng.uniform() < 0.35) sc.sets[i].push_back(e);
    }
  }
  for (std::size_t i = num_sets; i > 1; --i) std::swap(sc.sets[i - 1], sc.sets[rng.below(i)]);
  if (make_no) {
    const std::size_t witness = rng.below(universe_size);
    for (auto& s : sc.sets) s.erase(std::remove(s.begin(), s.end(), witness), s.end());
  }
  sc.is_yes = exhaustive_cover_check(sc);
  return sc;
}

SetCoverageInstance random_set_coverage(std::size_t universe_size, std::size_t num_sets,
                                        std::size_t k, double density, std::uint64_t seed) {
  SetCoverageInstance sc = empty_coverage(universe_size, num_sets, k);
  Rng rng(seed);
  sc.sets.assign(num_sets, {});
  for (auto& s : sc.sets) {
    for (std::size_t e = 0; e < universe_size; ++e) {
      if (rng.uniform() < density) s.push_back(e);
    }
  }
  sc.is_yes = exhaustive_cover_check(sc);
  return sc;
}

Instance reduce_set_coverage(const SetCoverageInstance& sc, double z) {
  const std::size_t u = sc.universe.size();
  const std::size_t m = sc.sets.size();
  if (u == 0) throw InputError("universe must be nonempty");
  if (m == 0) throw InputError("set collection must be nonempty");
  if (sc.k == 0 || sc.k > m) throw InputError("set coverage needs 1 <= k <= number of sets");

  const std::size_t n = u + m;
  std::vector<double> d(n * n, 2.0);
  for (std::size_t a = 0; a < n; ++a) d[a * n + a] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<char> member(u, 0);
    for (std::size_t e : sc.sets[i]) {
      if (e >= u) throw InputError("set references an element outside the universe");
      member[e] = 1;
    }
    for (std::size_t e = 0; e < u; ++e) {
      const double v = member[e] ? 1.0 : 3.0;
      d[e * n + (u + i)] = v;
      d[(u + i) * n + e] = v;
    }
  }

  std::vector<std::string> points, facilities;
  std::vector<Group> groups;
  for (std::size_t e = 0; e < u; ++e) {
    points.push_back("x_" + sc.universe[e]);
    groups.push_back({points.back(), {e}, {1.0}});
  }
  for (std::size_t i = 0; i < m; ++i) facilities.push_back("c_" + std::to_string(i));
  return Instance(std::move(points), std::move(facilities), Metric::from_matrix(n, std::move(d)),
                  std::move(groups), sc.k, z);
}

Instance singleton_groups(const Instance& inst) {
  std::vector<Group> groups;
  groups.reserve(inst.num_points());
  for (std::size_t p = 0; p < inst.num_points(); ++p) {
    groups.push_back({inst.point_ids()[p], {p}, {1.0}});
  }
  return inst.with_groups(std::move(groups));
}

}  // namespace fairclust::gen
