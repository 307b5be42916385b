#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fairclust/error.hpp"
#include "fairclust/fpt.hpp"
#include "fairclust/gen.hpp"
#include "fairclust/lp.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/random.hpp"
#include "fairclust/subsets.hpp"
#include "reference.hpp"

using namespace fairclust;

TEST_CASE("subset_search basics") {
  const Instance inst = ref::random_instance(8, 6, 2, 2, 1.0, 1);
  SUBCASE("|C_big| = k") {
    const CenterSet big({1, 4});
    const auto r = fpt::subset_search(inst, big, 2);
    CHECK(r.centers == big);
    CHECK(r.enumerated == 1);
  }
  SUBCASE("superset of an optimum") {
    const auto opt = oracle::brute_force_fair(inst);
    const CenterSet big = opt.opt_set.united(CenterSet({0, 5}));
    const auto r = fpt::subset_search(inst, big, 2);
    CHECK(r.cost.value <= opt.opt_cost);
    CHECK(r.cost.value == doctest::Approx(ref::fair(inst, r.centers.facilities())));
  }
  SUBCASE("minimality against sampled subsets") {
    const CenterSet big = CenterSet::all(6);
    const auto r = fpt::subset_search(inst, big, 3);
    CHECK(r.enumerated == binomial(6, 3));
    Rng rng(2);
    for (int t = 0; t < 1000; ++t) {
      const auto pos = unrank_combination(6, 3, rng.below(binomial(6, 3)));
      CHECK(r.cost.value <= fair_cost(inst, CenterSet(pos)).value);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(fpt::subset_search(inst, CenterSet({1}), 2), InputError);
    CHECK_THROWS_AS(fpt::subset_search(inst, CenterSet::all(6), 3, {10, 1}), ResourceCapError);
  }
  SUBCASE("workers") {
    const auto a = fpt::subset_search(inst, CenterSet::all(6), 3, {1000, 1});
    const auto b = fpt::subset_search(inst, CenterSet::all(6), 3, {1000, 4});
    CHECK(a.centers == b.centers);
    CHECK(a.cost.value == b.cost.value);
  }
}

TEST_CASE("construction bound for arbitrary candidate sets") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const double z = seed % 2 ? 2.0 : 1.0;
    const Instance inst = ref::random_instance(8, 7, 2, 2, z, 700 + seed);
    const double opt = oracle::brute_force_fair(inst).opt_cost;
    Rng rng(seed);
    for (int t = 0; t < 10; ++t) {
      std::vector<std::size_t> c;
      const std::size_t size = 2 + rng.below(5);
      while (c.size() < size) c.push_back(rng.below(7));
      const CenterSet big(c);
      if (big.size() < 2) continue;
      const double alpha = fair_cost(inst, big).value / opt;
      const auto r = fpt::subset_search(inst, big, 2);
      CHECK(r.cost.value <= std::pow(3.0, z - 1.0) * (alpha + 2.0) * opt * (1 + 1e-9));
    }
  }
}

TEST_CASE("solve on a zero-cost instance") {
  std::vector<std::vector<double>> coords = {{0, 0}, {0, 0}, {5, 5}, {5, 5}, {0, 0}, {5, 5}, {9, 0}};
  const Instance inst({"a", "b", "c", "d"}, {"u", "v", "w"}, Metric::from_coords(coords),
                      {{"g", {0, 2}, {1, 1}}, {"h", {1, 3}, {1, 1}}}, 2, 1.0);
  const auto r = fpt::solve(inst, 0.5, 0);
  CHECK(r.fair_cost == 0.0);
  CHECK(r.solution == CenterSet({0, 1}));
  CHECK(r.oracle_opt.value() == 0.0);
}

TEST_CASE("report fields") {
  const Instance inst = ref::random_instance(7, 5, 2, 2, 2.0, 3);
  const auto r = fpt::solve(inst, 0.6, 11);
  CHECK(r.epsilon_requested == 0.6);
  CHECK(r.epsilon_internal == doctest::Approx(0.2));
  CHECK(r.rng_seed == 11);
  CHECK(r.solution.size() == 2);
  CHECK(r.fair_cost == fair_cost(inst, r.solution).value);
  CHECK(r.bicriteria_set_size == r.bicriteria.centers.size());
  CHECK(r.subsets_enumerated == binomial(r.bicriteria_set_size, 2));
  CHECK(r.amplify_runs == rounding::amplification_runs(12, 0.2));
  REQUIRE(r.oracle_opt.has_value());
  CHECK(r.gamma_star <= *r.oracle_opt * (1 + 1e-9));
  CHECK(r.fair_cost <= (9.0 + 0.6) * *r.oracle_opt);

  fpt::SolveOptions no_oracle;
  no_oracle.oracle_cap = 5;
  CHECK_FALSE(fpt::solve(inst, 0.6, 11, no_oracle).oracle_opt.has_value());
  CHECK_THROWS_AS(fpt::solve(inst, 0.0, 11), InputError);
  CHECK_THROWS_AS(fpt::solve(inst, 1.5, 11), InputError);
}

TEST_CASE("overlapping groups go through the split") {
  const Instance inst = ref::random_instance(7, 5, 3, 2, 1.0, 4, 0.5);
  REQUIRE_FALSE(inst.groups_disjoint());
  const auto r = fpt::solve(inst, 0.5, 0);
  CHECK(r.fair_cost == fair_cost(inst, r.solution).value);
  CHECK(r.per_group_costs.size() == 3);
  CHECK(r.fair_cost <= 3.5 * r.oracle_opt.value());
}

TEST_CASE("determinism") {
  const Instance inst = ref::random_instance(8, 6, 2, 3, 1.0, 5);
  fpt::SolveOptions one, four;
  four.workers = 4;
  const auto a = fpt::solve(inst, 0.5, 7, one);
  const auto b = fpt::solve(inst, 0.5, 7, four);
  CHECK(a.solution == b.solution);
  CHECK(a.fair_cost == b.fair_cost);
  CHECK(a.bicriteria.centers == b.bicriteria.centers);
  CHECK(a.subsets_enumerated == b.subsets_enumerated);
}

TEST_CASE("approximation on a small suite") {
  for (double z : {1.0, 2.0}) {
    const double bound = std::pow(3.0, z) + 0.5;
    int ok = 0, total = 0;
    for (std::uint64_t inst_seed = 0; inst_seed < 8; ++inst_seed) {
      gen::EuclideanParams params;
      params.num_points = 9;
      params.num_facilities = 6;
      params.num_groups = 1 + inst_seed % 3;
      params.k = 1 + inst_seed % 3;
      params.z = z;
      params.seed = inst_seed;
      const Instance inst = gen::random_euclidean(params);
      const double opt = ref::opt_fair(inst).cost;
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto r = fpt::solve(inst, 0.5, seed);
        CHECK(r.oracle_opt.value() == doctest::Approx(opt).epsilon(1e-12));
        ++total;
        if (r.fair_cost <= bound * opt * (1 + 1e-9)) ++ok;
      }
    }
    CHECK(ok >= 0.95 * total);
  }
}
