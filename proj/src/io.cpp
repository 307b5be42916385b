#include "fairclust/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "fairclust/error.hpp"

namespace fairclust::io {

std::string format_cost(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("malformed JSON at line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": " + e.what());
  }
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw InputError(where + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!ok.count(it.key())) throw InputError("unknown field '" + it.key() + "' in " + where);
  }
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::vector<std::string> string_array(const Json& v, const std::string& what) {
  if (!v.is_array()) throw InputError(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw InputError(what + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw InputError(what + " must be a number");
  return v.get<double>();
}

std::size_t count(const Json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(what + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const Json doc = parse_document(text);
  reject_unknown(doc, {"points", "facilities", "matrix", "coords", "groups", "k", "z"}, "instance");
  auto points = string_array(require(doc, "points", "instance"), "'points'");
  auto facilities = string_array(require(doc, "facilities", "instance"), "'facilities'");
  const std::size_t n = points.size() + facilities.size();

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  for (std::size_t f = 0; f < facilities.size(); ++f) index.emplace(facilities[f], points.size() + f);

  const bool has_matrix = doc.contains("matrix");
  const bool has_coords = doc.contains("coords");
  if (has_matrix == has_coords) {
    throw InputError("instance needs exactly one of 'matrix' or 'coords'");
  }
  Metric metric;
  if (has_matrix) {
    const Json& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != n) {
      throw InputError("'matrix' must have one row per point and facility (" + std::to_string(n) +
                       ")");
    }
    std::vector<double> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n) {
        throw InputError("every 'matrix' row must have " + std::to_string(n) + " entries");
      }
      for (const auto& v : row) entries.push_back(number(v, "matrix entry"));
    }
    metric = Metric::from_matrix(n, std::move(entries));
  } else {
    const Json& obj = doc["coords"];
    if (!obj.is_object()) throw InputError("'coords' must map ids to coordinate arrays");
    std::vector<std::vector<double>> coords(n);
    std::vector<char> seen(n, 0);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      auto found = index.find(it.key());
      if (found == index.end()) throw InputError("'coords' has unknown id '" + it.key() + "'");
      if (!it.value().is_array()) throw InputError("coordinates of '" + it.key() + "' must be an array");
      for (const auto& v : it.value()) coords[found->second].push_back(number(v, "coordinate"));
      seen[found->second] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) {
        const std::string& id = i < points.size() ? points[i] : facilities[i - points.size()];
        throw InputError("'coords' is missing id '" + id + "'");
      }
    }
    metric = Metric::from_coords(std::move(coords));
  }

  const Json& jgroups = require(doc, "groups", "instance");
  if (!jgroups.is_array()) throw InputError("'groups' must be an array");
  std::vector<Group> groups;
  for (const auto& jg : jgroups) {
    reject_unknown(jg, {"name", "members", "weights"}, "group");
    Group g;
    const Json& name = require(jg, "name", "group");
    if (!name.is_string()) throw InputError("group 'name' must be a string");
    g.name = name.get<std::string>();
    for (const auto& id : string_array(require(jg, "members", "group"), "group 'members'")) {
      auto found = index.find(id);
      if (found == index.end() || found->second >= points.size()) {
        throw InputError("group '" + g.name + "' member '" + id + "' is not a point");
      }
      g.members.push_back(found->second);
    }
    const Json& weights = require(jg, "weights", "group");
    if (!weights.is_array()) throw InputError("group 'weights' must be an array");
    for (const auto& w : weights) g.weights.push_back(number(w, "weight"));
    groups.push_back(std::move(g));
  }

  const std::size_t k = count(require(doc, "k", "instance"), "'k'");
  const double z = number(require(doc, "z", "instance"), "'z'");
  return Instance(std::move(points), std::move(facilities), std::move(metric), std::move(groups),
                  k, z);
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["points"] = inst.point_ids();
  doc["facilities"] = inst.facility_ids();
  const std::size_t n = inst.num_elements();
  const Metric& m = inst.metric();
  if (m.is_matrix()) {
    Json rows = Json::array();
    for (std::size_t a = 0; a < n; ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < n; ++b) row.push_back(m.matrix()[a * n + b]);
      rows.push_back(std::move(row));
    }
    doc["matrix"] = std::move(rows);
  } else {
    Json coords = Json::object();
    for (std::size_t a = 0; a < n; ++a) {
      const std::string& id = a < inst.num_points() ? inst.point_ids()[a]
                                                     : inst.facility_ids()[a - inst.num_points()];
      coords[id] = m.coords()[a];
    }
    doc["coords"] = std::move(coords);
  }
  Json groups = Json::array();
  for (const auto& g : inst.groups()) {
    Json members = Json::array();
    for (std::size_t p : g.members) members.push_back(inst.point_ids()[p]);
    groups.push_back({{"name", g.name}, {"members", std::move(members)}, {"weights", g.weights}});
  }
  doc["groups"] = std::move(groups);
  doc["k"] = inst.k();
  doc["z"] = inst.z();
  return doc;
}

gen::SetCoverageInstance parse_set_coverage(std::string_view text) {
  const Json doc = parse_document(text);
  reject_unknown(doc, {"universe", "sets", "k", "is_yes"}, "set coverage instance");
  gen::SetCoverageInstance sc;
  sc.universe = string_array(require(doc, "universe", "set coverage instance"), "'universe'");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t e = 0; e < sc.universe.size(); ++e) {
    if (!index.emplace(sc.universe[e], e).second) {
      throw InputError("duplicate universe element '" + sc.universe[e] + "'");
    }
  }
  const Json& sets = require(doc, "sets", "set coverage instance");
  if (!sets.is_array()) throw InputError("'sets' must be an array of arrays");
  for (const auto& s : sets) {
    std::vector<std::size_t> members;
    for (const auto& id : string_array(s, "each set")) {
      auto found = index.find(id);
      if (found == index.end()) throw InputError("set element '" + id + "' is not in the universe");
      members.push_back(found->second);
    }
    sc.sets.push_back(std::move(members));
  }
  sc.k = count(require(doc, "k", "set coverage instance"), "'k'");
  if (sc.k == 0) throw InputError("'k' must be positive");
  if (doc.contains("is_yes")) {
    if (!doc["is_yes"].is_boolean()) throw InputError("'is_yes' must be a boolean");
    sc.is_yes = doc["is_yes"].get<bool>();
  }
  return sc;
}

gen::SetCoverageInstance load_set_coverage(const std::string& path) {
  return parse_set_coverage(read_file(path));
}

Json set_coverage_to_json(const gen::SetCoverageInstance& sc) {
  Json doc;
  doc["universe"] = sc.universe;
  Json sets = Json::array();
  for (const auto& s : sc.sets) {
    Json ids = Json::array();
    for (std::size_t e : s) ids.push_back(sc.universe[e]);
    sets.push_back(std::move(ids));
  }
  doc["sets"] = std::move(sets);
  doc["k"] = sc.k;
  if (sc.is_yes) doc["is_yes"] = *sc.is_yes;
  return doc;
}

Json center_set_to_json(const CenterSet& centers, const Instance& inst) {
  Json ids = Json::array();
  for (std::size_t f : centers) ids.push_back(inst.facility_ids()[f]);
  return ids;
}

namespace {
Json costs_to_json(const std::vector<double>& costs) {
  Json out = Json::array();
  for (double c : costs) out.push_back(format_cost(c));
  return out;
}
}  // namespace

Json solve_report_to_json(const fpt::SolveReport& r, const Instance& inst) {
  Json doc;
  doc["solution"] = center_set_to_json(r.solution, inst);
  doc["fair_cost"] = format_cost(r.fair_cost);
  doc["per_group_costs"] = costs_to_json(r.per_group_costs);
  doc["argmax_group"] = r.argmax_group;
  doc["bicriteria_set_size"] = r.bicriteria_set_size;
  doc["subsets_enumerated"] = r.subsets_enumerated;
  doc["gamma_star"] = format_cost(r.gamma_star);
  if (r.oracle_opt) doc["oracle_opt"] = format_cost(*r.oracle_opt);
  doc["epsilon_requested"] = r.epsilon_requested;
  doc["epsilon_internal"] = r.epsilon_internal;
  doc["rng_seed"] = r.rng_seed;
  doc["amplify_runs"] = r.amplify_runs;
  doc["iterations_per_run"] = r.iterations_per_run;
  doc["wall_times"] = {{"split", r.wall_times.split},
                       {"lp", r.wall_times.lp},
                       {"amplify", r.wall_times.amplify},
                       {"subset_search", r.wall_times.subset_search},
                       {"oracle", r.wall_times.oracle},
                       {"total", r.wall_times.total}};
  return doc;
}

Json oracle_result_to_json(const oracle::OracleResult& result, const Instance& inst) {
  Json doc;
  doc["opt_cost"] = format_cost(result.opt_cost);
  doc["opt_set"] = center_set_to_json(result.opt_set, inst);
  doc["enumerated"] = result.enumerated;
  return doc;
}

Json metric_report_to_json(const MetricReport& report, const Instance& inst) {
  auto element = [&](std::size_t a) {
    return a < inst.num_points() ? inst.point_ids()[a] : inst.facility_ids()[a - inst.num_points()];
  };
  Json doc;
  doc["ok"] = report.ok();
  doc["exhaustive"] = report.exhaustive;
  doc["triples_checked"] = report.triples_checked;
  doc["quadruples_checked"] = report.quadruples_checked;
  doc["violations"] = {{"symmetry", report.symmetry_violations},
                       {"negative", report.negative_violations},
                       {"diagonal", report.diagonal_violations},
                       {"triangle", report.triangle_violations},
                       {"relaxed_triangle", report.relaxed_triangle_violations},
                       {"total", report.total()}};
  Json samples = Json::array();
  for (const auto& v : report.samples) {
    samples.push_back({{"kind", to_string(v.kind)},
                       {"elements", {element(v.a), element(v.b), element(v.c), element(v.d)}},
                       {"excess", format_cost(v.excess)}});
  }
  doc["samples"] = std::move(samples);
  return doc;
}

Json trace_to_json(const rounding::RoundingTrace& trace, const Instance& inst) {
  Json doc;
  Json iterations = Json::array();
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    Json assigned = Json::array();
    for (std::size_t p : trace.iterations[i].newly_assigned) assigned.push_back(inst.point_ids()[p]);
    iterations.push_back({{"iteration", i + 1},
                          {"facility", inst.facility_ids()[trace.iterations[i].facility]},
                          {"assigned", std::move(assigned)},
                          {"unassigned_after", trace.unassigned_after[i]}});
  }
  doc["iterations"] = std::move(iterations);
  Json phase2 = Json::array();
  for (std::size_t p : trace.phase2_points) phase2.push_back(inst.point_ids()[p]);
  doc["phase2_points"] = std::move(phase2);
  doc["phase2_centers"] = center_set_to_json(trace.phase2_centers, inst);
  return doc;
}

}  // namespace fairclust::io
