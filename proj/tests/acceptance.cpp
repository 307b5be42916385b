// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <unistd.h>

#include "fairclust/baseline.hpp"
#include "fairclust/fpt.hpp"
#include "fairclust/gen.hpp"
#include "fairclust/io.hpp"
#include "fairclust/lp.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/random.hpp"
#include "fairclust/rounding.hpp"
#include "reference.hpp"

using namespace fairclust;

namespace {

constexpr double kRel = 1e-6;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string ratio(std::size_t ok, std::size_t total) {
  return std::to_string(ok) + "/" + std::to_string(total);
}

// 50 seeded Euclidean instances with n_P <= 10, n_F <= 6, k <= 3, l <= 3.
struct SuiteEntry {
  Instance inst;
  double opt;
};

std::vector<SuiteEntry> make_suite(double z) {
  std::vector<SuiteEntry> suite;
  for (std::size_t i = 0; i < 50; ++i) {
    gen::EuclideanParams p;
    p.num_points = 6 + i % 5;
    p.num_facilities = 4 + i % 3;
    p.k = 1 + i % 3;
    p.num_groups = 1 + (i / 3) % 3;
    p.dim = 2;
    p.z = z;
    p.weight_min = 0.5;
    p.weight_max = 2.0;
    p.seed = 1000 + i;
    Instance inst = gen::random_euclidean(p);
    const double opt = oracle::brute_force_fair(inst).opt_cost;
    suite.push_back({std::move(inst), opt});
  }
  return suite;
}

// Desk instances for the rounding statistics.
std::vector<SuiteEntry> make_desk() {
  std::vector<SuiteEntry> desk;
  for (std::size_t i = 0; i < 5; ++i) {
    gen::EuclideanParams p;
    p.num_points = 8;
    p.num_facilities = 5;
    p.k = 2 + i % 2;
    p.num_groups = 2 + i % 2;
    p.z = i < 3 ? 1.0 : 2.0;
    p.seed = 2000 + i;
    Instance inst = gen::random_euclidean(p);
    const double opt = oracle::brute_force_fair(inst).opt_cost;
    desk.push_back({std::move(inst), opt});
  }
  return desk;
}

Outcome approximation(const std::vector<SuiteEntry>& z1, const std::vector<SuiteEntry>& z2) {
  std::string detail;
  bool pass = true;
  for (const auto* suite : {&z1, &z2}) {
    const double z = (*suite)[0].inst.z();
    const double bound = std::pow(3.0, z) + 0.5;
    std::size_t good_instances = 0, ok_runs = 0, runs = 0;
    double worst = 0.0;
    for (const auto& e : *suite) {
      std::size_t ok = 0;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const fpt::SolveReport r = fpt::solve(e.inst, 0.5, seed);
        const double rel = r.fair_cost / e.opt;
        worst = std::max(worst, rel);
        if (r.fair_cost <= bound * e.opt * (1 + kRel)) ++ok;
      }
      ok_runs += ok;
      runs += 20;
      if (ok >= 18) ++good_instances;
    }
    pass = pass && good_instances == suite->size();
    detail += "z=" + fmt("%g", z) + ": " + ratio(good_instances, suite->size()) +
              " instances at >=90%, runs " + ratio(ok_runs, runs) + " within " + fmt("%g", bound) +
              "*OPT, worst ratio " + fmt("%.4f", worst) + "; ";
  }
  return {pass, detail};
}

Outcome lp_bound(const std::vector<SuiteEntry>& z1, const std::vector<SuiteEntry>& z2) {
  std::size_t ok = 0, total = 0;
  double worst = 0.0;
  for (const auto* suite : {&z1, &z2}) {
    for (const auto& e : *suite) {
      const double gamma = lp::solve(lp::build_model(e.inst)).gamma;
      worst = std::max(worst, gamma / e.opt);
      ++total;
      if (gamma <= e.opt * (1 + kRel)) ++ok;
    }
  }
  return {ok == total, ratio(ok, total) + " instances, max gamma*/OPT " + fmt("%.6f", worst)};
}

Outcome subset_bound(const std::vector<SuiteEntry>& z1, const std::vector<SuiteEntry>& z2) {
  std::size_t ok = 0, total = 0;
  double worst = 0.0;
  for (const auto* suite : {&z1, &z2}) {
    for (std::size_t i = 0; i < suite->size(); ++i) {
      const auto& e = (*suite)[i];
      const double z = e.inst.z();
      const std::size_t nf = e.inst.num_facilities();
      const auto frac = lp::solve(lp::build_model(e.inst));
      std::vector<CenterSet> bigs;
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        bigs.push_back(rounding::amplify(e.inst, frac, 0.5, seed).centers);
        // Single rounding runs are larger-alpha candidates.
        bigs.push_back(rounding::randomized_subroutine(e.inst, frac, 1.0, seed).centers);
      }
      // Deliberately inflated: random sets of size k..n_F, often far from optimal.
      Rng rng(derive_seed(77, i));
      for (int t = 0; t < 6; ++t) {
        const std::size_t size = e.inst.k() + rng.below(nf - e.inst.k() + 1);
        std::vector<std::size_t> pick(nf);
        for (std::size_t f = 0; f < nf; ++f) pick[f] = f;
        for (std::size_t j = 0; j < size; ++j) std::swap(pick[j], pick[j + rng.below(nf - j)]);
        pick.resize(size);
        bigs.emplace_back(pick);
      }
      for (const CenterSet& big : bigs) {
        if (big.size() < e.inst.k()) continue;
        const double alpha = fair_cost(e.inst, big).value / e.opt;
        const double bound = std::pow(3.0, z - 1.0) * (alpha + 2.0) * e.opt;
        const auto r = fpt::subset_search(e.inst, big, e.inst.k());
        worst = std::max(worst, r.cost.value / bound);
        ++total;
        if (r.cost.value <= bound * (1 + kRel)) ++ok;
      }
    }
  }
  return {ok == total,
          ratio(ok, total) + " candidate sets, max cost/bound " + fmt("%.4f", worst)};
}

Outcome amplify_success(const std::vector<SuiteEntry>& desk) {
  bool pass = true;
  std::string detail;
  for (const auto& e : desk) {
    const auto frac = lp::solve(lp::build_model(e.inst));
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const CenterSet c = rounding::amplify(e.inst, frac, 0.5, seed).centers;
      if (fair_cost(e.inst, c).value <= 1.5 * e.opt * (1 + kRel)) ++ok;
    }
    pass = pass && ok >= 180;
    detail += ratio(ok, 200) + " ";
  }
  return {pass, "per instance: " + detail};
}

Outcome expectation(const std::vector<SuiteEntry>& desk) {
  bool pass = true;
  double worst = -1e300;
  std::size_t checks = 0;
  for (const auto& e : desk) {
    const auto frac = lp::solve(lp::build_model(e.inst));
    const auto est = rounding::estimate_group_expectation(e.inst, frac, 0.5, 10000, 5);
    for (std::size_t j = 0; j < e.inst.num_groups(); ++j) {
      const double slack = est.mean[j] - (1.25 * e.opt + 3.0 * est.std_error[j]);
      worst = std::max(worst, slack / e.opt);
      ++checks;
      if (slack > 0.0) pass = false;
    }
  }
  return {pass, std::to_string(checks) +
                    " groups, max (mean - bound)/OPT = " + fmt("%.4f", worst)};
}

Outcome survival() {
  bool pass = true;
  std::string detail;
  for (std::size_t k : {2, 3}) {
    const Instance inst = ref::random_instance(6, 4, 2, k, 1.0, 3000 + k);
    const auto frac = lp::solve(lp::build_model(inst));
    const auto stats = rounding::survival_statistics(inst, frac, 0.5, 10000, 9);
    for (std::size_t i : {1, 2, 5}) {
      const double zscore = (stats.empirical(i, 0) - stats.theory(i)) / stats.std_error(i);
      if (std::abs(zscore) > 3.0) pass = false;
      detail += "k=" + std::to_string(k) + ",i=" + std::to_string(i) + ": " +
                fmt("%.4f", stats.empirical(i, 0)) + " vs " + fmt("%.4f", stats.theory(i)) +
                " (z=" + fmt("%+.2f", zscore) + ") ";
    }
  }
  return {pass, detail};
}

Outcome reduction_gap() {
  std::size_t ok = 0, total = 0, yes = 0, no = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t u = 5 + i % 4;
    const std::size_t m = 4 + i % 5;
    const std::size_t k = 1 + i % 3;
    gen::SetCoverageInstance sc = i < 14 ? gen::planted_set_coverage(u, m, k, i % 2 == 1, i)
                                         : gen::random_set_coverage(u, m, k, 0.35, i);
    const bool is_yes = gen::exhaustive_cover_check(sc);
    (is_yes ? yes : no) += 1;
    for (double z : {1.0, 2.0}) {
      const double opt = oracle::brute_force_fair(gen::reduce_set_coverage(sc, z)).opt_cost;
      ++total;
      if (opt == (is_yes ? 1.0 : std::pow(3.0, z))) ++ok;
    }
  }
  return {ok == total && yes > 0 && no > 0, ratio(ok, total) + " exact (" + std::to_string(yes) +
                                                " YES, " + std::to_string(no) + " NO instances)"};
}

Outcome ell_bounds(const std::vector<SuiteEntry>& z1, const std::vector<SuiteEntry>& z2) {
  std::size_t ok_u = 0, ok_a = 0, total = 0;
  double worst_u = 0.0, worst_a = 0.0;
  for (const auto* suite : {&z1, &z2}) {
    for (const auto& e : *suite) {
      const double l = static_cast<double>(e.inst.num_groups());
      const double opt_u = oracle::brute_force_unconstrained(e.inst).opt_cost;
      const double approx = fair_cost(e.inst, baseline::ell_approx(e.inst)).value;
      const double c = baseline::local_search_constant(e.inst.z());
      worst_u = std::max(worst_u, opt_u / (l * e.opt));
      worst_a = std::max(worst_a, approx / (c * l * e.opt));
      ++total;
      if (opt_u <= l * e.opt * (1 + kRel)) ++ok_u;
      if (approx <= c * l * e.opt * (1 + kRel)) ++ok_a;
    }
  }
  return {ok_u == total && ok_a == total,
          "OPT_u <= l*OPT " + ratio(ok_u, total) + " (max ratio " + fmt("%.4f", worst_u) +
              "), ell_approx <= c'*l*OPT " + ratio(ok_a, total) + " (max ratio " +
              fmt("%.4f", worst_a) + ")"};
}

// One randomized property case; returns the name of the first failed check.
std::string property_case(std::uint64_t seed) {
  Rng rng(derive_seed(4000, seed));
  const double zs[] = {1.0, 2.0, 1.5};
  const double z = zs[rng.below(3)];
  const std::size_t np = 3 + rng.below(6), nf = 2 + rng.below(4);
  const std::size_t ng = 1 + rng.below(3), k = 1 + rng.below(nf);
  Instance inst = [&] {
    if (rng.uniform() < 0.5) return ref::random_instance(np, nf, ng, k, z, seed, 0.3);
    gen::EuclideanParams p;
    p.num_points = np;
    p.num_facilities = nf;
    p.num_groups = std::min(ng, np);
    p.k = k;
    p.z = z;
    p.dim = 1 + rng.below(3);
    p.weight_max = 3.0;
    p.seed = seed;
    return gen::random_euclidean(p);
  }();

  MetricCheckOptions mo;
  mo.seed = seed;
  const MetricReport rep = validate_metric(inst, mo);
  if (!rep.ok()) return "metric validation";

  // Relaxed triangle on independently sampled quadruples.
  const std::size_t n = inst.num_elements();
  const double factor = std::pow(3.0, z - 1.0);
  for (int t = 0; t < 50; ++t) {
    const std::size_t q = rng.below(n), r = rng.below(n), s = rng.below(n), u = rng.below(n);
    const double lhs = ref::power(inst.distance(q, u), z);
    const double rhs = factor * (ref::power(inst.distance(q, r), z) +
                                 ref::power(inst.distance(r, s), z) +
                                 ref::power(inst.distance(s, u), z));
    if (lhs > rhs * (1 + 1e-9) + 1e-12) return "relaxed triangle";
  }

  std::vector<std::size_t> base;
  for (std::size_t f = 0; f < nf; ++f) {
    if (rng.uniform() < 0.5) base.push_back(f);
  }
  if (base.empty()) base.push_back(rng.below(nf));
  const CenterSet c(base);
  const CenterSet bigger = c.united(CenterSet({rng.below(nf)}));

  const FairCost fc = fair_cost(inst, c);
  if (std::abs(fc.value - ref::fair(inst, c.facilities())) > 1e-9 * std::max(1.0, fc.value)) {
    return "fair cost vs reference";
  }
  if (fair_cost(inst, bigger).value > fc.value + 1e-9 * fc.value) return "monotonicity";

  const double s = rng.uniform(0.1, 10.0);
  const FairCost scaled = fair_cost(inst.with_metric(inst.metric().scaled(s)), c);
  if (std::abs(scaled.value - fc.value * std::pow(s, z)) > 1e-9 * std::max(1e-300, scaled.value)) {
    return "scale equivariance";
  }
  std::size_t at_max = 0;
  for (double v : fc.per_group) {
    if (v == fc.value) ++at_max;
  }
  if (at_max == 1 && fc.value > 0.0) {
    // Unique maximum with a clear margin to the runner-up.
    double second = 0.0;
    for (std::size_t j = 0; j < fc.per_group.size(); ++j) {
      if (j != fc.argmax_group) second = std::max(second, fc.per_group[j]);
    }
    if (second < fc.value * (1 - 1e-9) && scaled.argmax_group != fc.argmax_group) {
      return "argmax preservation";
    }
  }

  const Instance split = split_overlapping_groups(inst);
  if (!split.groups_disjoint()) return "split disjointness";
  if (std::abs(fair_cost(split, c).value - fc.value) > 1e-9 * std::max(1.0, fc.value)) {
    return "split preservation";
  }

  for (const auto& e : voronoi_partition(inst, c).entries) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t f : c) {
      if (ref::dist(inst, f, e.point) < best) {
        best = ref::dist(inst, f, e.point);
        arg = f;
      }
    }
    if (e.center != arg) return "voronoi";
  }
  return "";
}

Outcome properties() {
  std::size_t ok = 0;
  std::string first;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::string failed = property_case(seed);
    if (failed.empty()) {
      ++ok;
    } else if (first.empty()) {
      first = " (first failure: case " + std::to_string(seed) + ", " + failed + ")";
    }
  }
  return {ok == 1000, ratio(ok, 1000) + " cases" + first};
}

struct Captured {
  int status;
  std::string out;
};

Captured capture(const std::string& cmd) {
  Captured c{-1, ""};
  FILE* pipe = ::popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return c;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.status = ::pclose(pipe);
  return c;
}

std::string strip_timings(const std::string& text) {
  io::Json doc = io::Json::parse(text);
  if (doc.is_object()) doc.erase("wall_times");
  return doc.dump(2);
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("fairclust_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string bin = FAIRCLUST_CLI_PATH;

  gen::EuclideanParams p;
  p.num_points = 10;
  p.num_facilities = 6;
  p.num_groups = 3;
  p.k = 3;
  p.seed = 5;
  const std::string inst = (dir / "inst.json").string();
  std::ofstream(inst) << io::instance_to_json(gen::random_euclidean(p)).dump(2);
  const std::string sc = (dir / "sc.json").string();
  std::ofstream(sc) << io::set_coverage_to_json(gen::planted_set_coverage(6, 6, 2, false, 3)).dump(2);

  const std::vector<std::string> commands = {
      "solve --instance " + inst + " --seed 11",
      "solve --instance " + inst + " --seed 11 --z 2 --epsilon 0.8",
      "bicriteria --instance " + inst + " --seed 11",
      "baseline --instance " + inst,
      "oracle --instance " + inst,
      "validate --instance " + inst + " --seed 3",
      "stats --instance " + inst + " --seed 11 --trials 2000",
      "gen euclidean --points 9 --facilities 5 --groups 2 --k 2 --seed 8",
      "gen setcover --universe 6 --sets 5 --k 2 --seed 8",
      "gen setcover-reduce --setcover " + sc + " --z 2",
      "gen singleton --instance " + inst,
  };
  std::size_t ok = 0;
  std::string first;
  for (const auto& cmd : commands) {
    std::vector<std::string> outs;
    bool good = true;
    for (const char* workers : {"1", "1", "4", "4"}) {
      const Captured c = capture(bin + " " + cmd + " --workers " + workers);
      if (c.status != 0 || c.out.empty()) {
        good = false;
        break;
      }
      outs.push_back(strip_timings(c.out));
    }
    for (const auto& o : outs) good = good && o == outs[0];
    if (good) {
      ++ok;
    } else if (first.empty()) {
      first = " (first mismatch: " + cmd + ")";
    }
  }
  fs::remove_all(dir);
  return {ok == commands.size(), ratio(ok, commands.size()) + " commands byte-identical" + first};
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const std::vector<SuiteEntry> z1 = make_suite(1.0);
  std::vector<SuiteEntry> z2;
  for (const auto& e : z1) {
    Instance inst = e.inst.with_z(2.0);
    const double opt = oracle::brute_force_fair(inst).opt_cost;
    z2.push_back({std::move(inst), opt});
  }
  const std::vector<SuiteEntry> desk = make_desk();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"approximation guarantee (3^z + eps')", [&] { return approximation(z1, z2); }},
      {"LP relaxation bound", [&] { return lp_bound(z1, z2); }},
      {"subset search construction bound", [&] { return subset_bound(z1, z2); }},
      {"amplified rounding success rate", [&] { return amplify_success(desk); }},
      {"rounding expectation bound", [&] { return expectation(desk); }},
      {"unassigned survival law", survival},
      {"set coverage reduction gap", reduction_gap},
      {"O(l) baseline bounds", [&] { return ell_bounds(z1, z2); }},
      {"core invariant properties", properties},
      {"CLI determinism", cli_determinism},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    all = all && o.pass;
    std::printf("%s %2zu %s: %s[%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%s overall in %.1fs\n", all ? "PASS" : "FAIL",
              std::chrono::duration<double>(clock::now() - start).count());
  return all ? 0 : 1;
}
