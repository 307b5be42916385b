#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fairclust/error.hpp"
#include "fairclust/gen.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/random.hpp"
#include "reference.hpp"

using namespace fairclust;

TEST_CASE("random_euclidean") {
  gen::EuclideanParams params;
  params.num_points = 9;
  params.num_facilities = 4;
  params.num_groups = 3;
  params.seed = 17;
  const Instance a = gen::random_euclidean(params);
  CHECK(a == gen::random_euclidean(params));
  CHECK(a.num_groups() == 3);
  CHECK(a.groups_disjoint());
  std::size_t members = 0;
  for (const auto& g : a.groups()) {
    CHECK_FALSE(g.members.empty());
    members += g.members.size();
  }
  CHECK(members == 9);
  CHECK(validate_metric(a).ok());

  params.seed = 18;
  CHECK_FALSE(a == gen::random_euclidean(params));

  params.num_groups = params.num_points;
  const Instance s = gen::random_euclidean(params);
  for (const auto& g : s.groups()) CHECK(g.members.size() == 1);
}

TEST_CASE("exhaustive_cover_check") {
  gen::SetCoverageInstance sc;
  sc.universe = {"a", "b", "c"};
  sc.sets = {{0}, {0, 1, 2}};
  sc.k = 1;
  CHECK(gen::exhaustive_cover_check(sc));

  sc.sets = {{}, {}};
  CHECK_FALSE(gen::exhaustive_cover_check(sc));

  sc.sets = {{0}, {1}, {2}};
  sc.k = 2;
  CHECK_FALSE(gen::exhaustive_cover_check(sc));
  sc.k = 3;
  CHECK(gen::exhaustive_cover_check(sc));
}

TEST_CASE("planted covers") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto yes = gen::planted_set_coverage(7, 6, 2, false, seed);
    CHECK(yes.is_yes.value());
    CHECK(gen::exhaustive_cover_check(yes));
    CHECK(yes.sets.size() == 6);
    const auto no = gen::planted_set_coverage(7, 6, 2, true, seed);
    CHECK(gen::exhaustive_cover_check(no) == no.is_yes.value());
    CHECK_FALSE(no.is_yes.value());
  }
}

TEST_CASE("reduction gap") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto sc = seed < 6 ? gen::planted_set_coverage(6, 6, 2, seed % 2 == 1, seed)
                             : gen::random_set_coverage(6, 5, 2, 0.4, seed);
    const bool yes = gen::exhaustive_cover_check(sc);
    for (double z : {1.0, 2.0}) {
      const Instance inst = gen::reduce_set_coverage(sc, z);
      CHECK(validate_metric(inst).ok());
      CHECK(inst.num_groups() == inst.num_points());
      const double opt = oracle::brute_force_fair(inst).opt_cost;
      CHECK(opt == (yes ? 1.0 : std::pow(3.0, z)));
      CHECK(ref::opt_fair(inst).cost == opt);
    }
  }
}

TEST_CASE("z = 1 NO instance has OPT 3") {
  gen::SetCoverageInstance sc;
  sc.universe = {"a", "b", "c"};
  sc.sets = {{0}, {1}, {2}};
  sc.k = 2;
  CHECK(oracle::brute_force_fair(gen::reduce_set_coverage(sc, 1.0)).opt_cost == 3.0);
}

TEST_CASE("reduction distances") {
  gen::SetCoverageInstance sc;
  sc.universe = {"a", "b"};
  sc.sets = {{0}, {0, 1}};
  sc.k = 1;
  const Instance inst = gen::reduce_set_coverage(sc, 1.0);
  CHECK(inst.point_ids() == std::vector<std::string>{"x_a", "x_b"});
  CHECK(inst.facility_point_distance(0, 0) == 1.0);
  CHECK(inst.facility_point_distance(0, 1) == 3.0);
  CHECK(inst.facility_point_distance(1, 1) == 1.0);
  CHECK(inst.distance(0, 1) == 2.0);
  CHECK(inst.distance(2, 3) == 2.0);
}

TEST_CASE("singleton_groups") {
  const Instance inst = ref::random_instance(8, 4, 2, 2, 2.0, 61, 0.3);
  const Instance s = gen::singleton_groups(inst);
  CHECK(s.num_groups() == 8);
  CHECK(gen::singleton_groups(s) == s);
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const CenterSet c({rng.below(4), rng.below(4)});
    CHECK(fair_cost(s, c).value == doctest::Approx(ref::supplier(s, c.facilities())));
  }
  const auto sc = gen::planted_set_coverage(5, 4, 2, false, 3);
  const Instance red = gen::reduce_set_coverage(sc, 1.0);
  CHECK(gen::singleton_groups(red) == red);
}
