#include "fairclust/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fairclust/baseline.hpp"
#include "fairclust/error.hpp"
#include "fairclust/fpt.hpp"
#include "fairclust/gen.hpp"
#include "fairclust/io.hpp"
#include "fairclust/lp.hpp"
#include "fairclust/oracle.hpp"
#include "fairclust/rounding.hpp"
#include "fairclust/subsets.hpp"

namespace fairclust::cli {

namespace {

using io::Json;
using io::format_cost;

struct RunConfig {
  std::string instance_path;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  std::optional<double> z;
  std::string output_path;
  std::size_t workers = 1;
  std::uint64_t enum_cap = 100000000;
  std::uint64_t oracle_cap = 1000000;
  std::string dump_lp;
  std::string dump_trace;
  bool skip_metric_check = false;
  std::size_t trials = 10000;

  // gen
  gen::EuclideanParams euclid;
  std::string setcover_path;
  std::size_t universe_size = 6;
  std::size_t num_sets = 6;
  bool make_no = false;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Instance load(const RunConfig& cfg, bool check_metric) {
  Instance inst = io::load_instance(cfg.instance_path);
  if (cfg.z) inst = inst.with_z(*cfg.z);
  if (check_metric && !cfg.skip_metric_check) {
    const MetricReport report = validate_metric(inst);
    if (!report.ok()) {
      throw InputError("instance distances violate the metric axioms (" +
                       std::to_string(report.total()) +
                       " violations); run 'validate' for details or pass --skip-metric-check");
    }
  }
  return inst;
}

void require_epsilon(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw InputError("--epsilon must lie in (0, 1]");
}

void maybe_dump_lp(const RunConfig& cfg, const lp::LPModel& model) {
  if (cfg.dump_lp.empty()) return;
  std::ostringstream ss;
  lp::write_lp_text(ss, model);
  write_text(cfg.dump_lp, ss.str());
}

void maybe_dump_traces(const RunConfig& cfg, const rounding::AmplifyResult& amp,
                       const Instance& disjoint) {
  if (cfg.dump_trace.empty()) return;
  Json runs = Json::array();
  for (std::size_t i = 0; i < amp.run_results.size(); ++i) {
    Json run = io::trace_to_json(amp.run_results[i].trace, disjoint);
    run["run"] = i;
    run["centers"] = io::center_set_to_json(amp.run_results[i].centers, disjoint);
    runs.push_back(std::move(run));
  }
  write_text(cfg.dump_trace, dump(Json{{"runs", std::move(runs)}}));
}

Json fair_cost_fields(const Instance& inst, const CenterSet& c) {
  const FairCost cost = fair_cost(inst, c);
  Json per_group = Json::array();
  for (double v : cost.per_group) per_group.push_back(format_cost(v));
  return {{"fair_cost", format_cost(cost.value)},
          {"per_group_costs", std::move(per_group)},
          {"argmax_group", cost.argmax_group}};
}

Json command_solve(const RunConfig& cfg) {
  require_epsilon(cfg.epsilon);
  const Instance inst = load(cfg, true);
  if (!cfg.dump_lp.empty()) maybe_dump_lp(cfg, lp::build_model(split_overlapping_groups(inst)));
  fpt::SolveOptions opts;
  opts.enumeration_cap = cfg.enum_cap;
  opts.oracle_cap = cfg.oracle_cap;
  opts.workers = cfg.workers;
  opts.keep_traces = !cfg.dump_trace.empty();
  const fpt::SolveReport report = fpt::solve(inst, cfg.epsilon, cfg.seed, opts);
  maybe_dump_traces(cfg, report.bicriteria, split_overlapping_groups(inst));
  return io::solve_report_to_json(report, inst);
}

Json command_bicriteria(const RunConfig& cfg) {
  require_epsilon(cfg.epsilon);
  const Instance inst = load(cfg, true);
  const Instance disjoint = split_overlapping_groups(inst);
  const lp::LPModel model = lp::build_model(disjoint);
  maybe_dump_lp(cfg, model);
  const lp::FractionalSolution frac = lp::solve(model);
  const rounding::AmplifyResult amp = rounding::amplify(
      disjoint, frac, cfg.epsilon, cfg.seed, {cfg.workers, !cfg.dump_trace.empty()});
  maybe_dump_traces(cfg, amp, disjoint);

  Json doc;
  doc["centers"] = io::center_set_to_json(amp.centers, inst);
  doc["size"] = amp.centers.size();
  doc.update(fair_cost_fields(inst, amp.centers));
  doc["gamma_star"] = format_cost(frac.gamma);
  doc["runs"] = amp.runs;
  doc["iterations_per_run"] = amp.iterations_per_run;
  doc["constant_c"] = amp.constant;
  doc["size_bound"] = amp.size_bound;
  doc["epsilon"] = cfg.epsilon;
  doc["rng_seed"] = cfg.seed;
  return doc;
}

Json command_baseline(const RunConfig& cfg) {
  const Instance inst = load(cfg, true);
  const CenterSet centers = baseline::ell_approx(inst);
  const double c_prime = baseline::local_search_constant(inst.z());
  Json doc;
  doc["centers"] = io::center_set_to_json(centers, inst);
  doc.update(fair_cost_fields(inst, centers));
  doc["unconstrained_cost"] = format_cost(unconstrained_cost(inst, centers));
  doc["constant_c_prime"] = c_prime;
  doc["guarantee_factor"] = c_prime * static_cast<double>(inst.num_groups());
  return doc;
}

Json command_oracle(const RunConfig& cfg) {
  const Instance inst = load(cfg, true);
  return io::oracle_result_to_json(oracle::brute_force_fair(inst, {cfg.oracle_cap, cfg.workers}),
                                   inst);
}

Json command_validate(const RunConfig& cfg) {
  const Instance inst = load(cfg, false);
  MetricCheckOptions opts;
  opts.seed = cfg.seed;
  return io::metric_report_to_json(validate_metric(inst, opts), inst);
}

Json command_stats(const RunConfig& cfg) {
  require_epsilon(cfg.epsilon);
  const Instance inst = load(cfg, true);
  const Instance disjoint = split_overlapping_groups(inst);
  const lp::LPModel model = lp::build_model(disjoint);
  maybe_dump_lp(cfg, model);
  const lp::FractionalSolution frac = lp::solve(model);

  const auto survival =
      rounding::survival_statistics(disjoint, frac, cfg.epsilon, cfg.trials, cfg.seed, cfg.workers);
  Json law = Json::array();
  for (std::size_t i = 1; i <= survival.unassigned.size(); ++i) {
    double mean = 0.0, worst_z = 0.0;
    const double se = survival.std_error(i);
    for (std::size_t p = 0; p < disjoint.num_points(); ++p) {
      const double e = survival.empirical(i, p);
      mean += e;
      if (se > 0.0) worst_z = std::max(worst_z, std::abs(e - survival.theory(i)) / se);
    }
    mean /= static_cast<double>(disjoint.num_points());
    law.push_back({{"iteration", i},
                   {"theory", format_cost(survival.theory(i))},
                   {"empirical_mean", format_cost(mean)},
                   {"std_error", format_cost(se)},
                   {"max_abs_z", format_cost(worst_z)}});
  }

  const auto expectation = rounding::estimate_group_expectation(
      disjoint, frac, cfg.epsilon, std::max<std::size_t>(cfg.trials, 100), cfg.seed, cfg.workers);
  Json groups = Json::array();
  for (std::size_t j = 0; j < disjoint.num_groups(); ++j) {
    groups.push_back({{"group", disjoint.groups()[j].name},
                      {"mean", format_cost(expectation.mean[j])},
                      {"std_error", format_cost(expectation.std_error[j])}});
  }

  Json doc;
  doc["k"] = inst.k();
  doc["epsilon"] = cfg.epsilon;
  doc["trials"] = cfg.trials;
  doc["rng_seed"] = cfg.seed;
  doc["gamma_star"] = format_cost(frac.gamma);
  doc["survival"] = std::move(law);
  doc["group_expectation"] = std::move(groups);
  if (binomial(inst.num_facilities(), inst.k()) <= cfg.oracle_cap) {
    const double opt = oracle::brute_force_fair(inst, {cfg.oracle_cap, cfg.workers}).opt_cost;
    doc["oracle_opt"] = format_cost(opt);
    doc["expectation_bound"] = format_cost((1.0 + cfg.epsilon / 2.0) * opt);
  }
  return doc;
}

Json command_gen_euclidean(const RunConfig& cfg) {
  gen::EuclideanParams params = cfg.euclid;
  params.seed = cfg.seed;
  if (cfg.z) params.z = *cfg.z;
  return io::instance_to_json(gen::random_euclidean(params));
}

Json command_gen_setcover_reduce(const RunConfig& cfg) {
  const gen::SetCoverageInstance sc = io::load_set_coverage(cfg.setcover_path);
  return io::instance_to_json(gen::reduce_set_coverage(sc, cfg.z.value_or(1.0)));
}

Json command_gen_singleton(const RunConfig& cfg) {
  return io::instance_to_json(gen::singleton_groups(load(cfg, false)));
}

Json command_gen_setcover(const RunConfig& cfg) {
  return io::set_coverage_to_json(gen::planted_set_coverage(
      cfg.universe_size, cfg.num_sets, cfg.euclid.k, cfg.make_no, cfg.seed));
}

void add_instance_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--instance", cfg.instance_path, "Instance JSON file")->required();
  cmd->add_option("--z", cfg.z, "Override the instance exponent z");
  cmd->add_flag("--skip-metric-check", cfg.skip_metric_check,
                "Do not validate metric axioms on load");
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", cfg.output_path, "Write the report here instead of stdout");
  cmd->add_option("--workers", cfg.workers, "Worker threads (does not change results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Socially fair clustering: LP rounding, FPT subset search and exact oracles",
               "fairclust"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    Json (*handler)(const RunConfig&);
  };
  std::vector<Command> commands;

  auto add_solver = [&](const char* name, const char* help, Json (*handler)(const RunConfig&)) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_instance_options(cmd, cfg);
    add_common_options(cmd, cfg);
    commands.push_back({cmd, handler});
    return cmd;
  };

  CLI::App* solve = add_solver("solve", "FPT (3^z + eps)-approximation", command_solve);
  CLI::App* bicriteria =
      add_solver("bicriteria", "Amplified LP rounding (bi-criteria center set)", command_bicriteria);
  add_solver("baseline", "O(l)-approximation via unconstrained local search", command_baseline);
  CLI::App* oracle_cmd = add_solver("oracle", "Exact brute-force optimum", command_oracle);
  add_solver("validate", "Check metric axioms", command_validate);
  CLI::App* stats = add_solver("stats", "Rounding statistics harness", command_stats);

  for (CLI::App* cmd : {solve, bicriteria, stats}) {
    cmd->add_option("--epsilon", cfg.epsilon, "Accuracy in (0, 1]")->capture_default_str();
    cmd->add_option("--dump-lp", cfg.dump_lp, "Write the LP relaxation in LP text format");
  }
  for (CLI::App* cmd : {solve, bicriteria}) {
    cmd->add_option("--dump-trace", cfg.dump_trace, "Write per-run rounding traces as JSON");
  }
  for (CLI::App* cmd : {solve, oracle_cmd, stats}) {
    cmd->add_option("--oracle-cap", cfg.oracle_cap, "Max subsets for the exact oracle")
        ->capture_default_str();
  }
  solve->add_option("--enum-cap", cfg.enum_cap, "Max subsets for the subset search")
      ->capture_default_str();
  stats->add_option("--trials", cfg.trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* gen_cmd = app.add_subcommand("gen", "Instance generators");
  gen_cmd->require_subcommand(1);

  CLI::App* euclid = gen_cmd->add_subcommand("euclidean", "Random Euclidean instance");
  add_common_options(euclid, cfg);
  euclid->add_option("--points", cfg.euclid.num_points)->capture_default_str();
  euclid->add_option("--facilities", cfg.euclid.num_facilities)->capture_default_str();
  euclid->add_option("--dim", cfg.euclid.dim)->capture_default_str();
  euclid->add_option("--groups", cfg.euclid.num_groups)->capture_default_str();
  euclid->add_option("--k", cfg.euclid.k)->capture_default_str();
  euclid->add_option("--z", cfg.z, "Exponent z (default 1)");
  euclid->add_option("--weight-min", cfg.euclid.weight_min)->capture_default_str();
  euclid->add_option("--weight-max", cfg.euclid.weight_max)->capture_default_str();
  commands.push_back({euclid, command_gen_euclidean});

  CLI::App* reduce = gen_cmd->add_subcommand("setcover-reduce", "Set coverage to k-supplier");
  add_common_options(reduce, cfg);
  reduce->add_option("--setcover", cfg.setcover_path, "Set coverage JSON file")->required();
  reduce->add_option("--z", cfg.z, "Exponent z (default 1)");
  commands.push_back({reduce, command_gen_setcover_reduce});

  CLI::App* singleton = gen_cmd->add_subcommand("singleton", "Replace groups by singletons");
  add_instance_options(singleton, cfg);
  add_common_options(singleton, cfg);
  commands.push_back({singleton, command_gen_singleton});

  CLI::App* setcover = gen_cmd->add_subcommand("setcover", "Planted set coverage instance");
  add_common_options(setcover, cfg);
  setcover->add_option("--universe", cfg.universe_size)->capture_default_str();
  setcover->add_option("--sets", cfg.num_sets)->capture_default_str();
  setcover->add_option("--k", cfg.euclid.k)->capture_default_str();
  setcover->add_flag("--no", cfg.make_no, "Remove one element from every set");
  commands.push_back({setcover, command_gen_setcover});

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    for (const auto& c : commands) {
      if (!c.app->parsed()) continue;
      const std::string text = dump(c.handler(cfg));
      if (cfg.output_path.empty()) {
        out << text;
      } else {
        write_text(cfg.output_path, text);
      }
      return kSuccess;
    }
    err << "error: no command given\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceCapError& e) {
    err << "resource cap exceeded: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace fairclust::cli
