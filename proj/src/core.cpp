#include "fairclust/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "fairclust/error.hpp"
#include "fairclust/random.hpp"

namespace fairclust {

Metric Metric::from_matrix(std::size_t n, std::vector<double> entries) {
  if (entries.size() != n * n) {
    throw InputError("distance matrix has " + std::to_string(entries.size()) +
                     " entries, expected " + std::to_string(n * n));
  }
  for (double v : entries) {
    if (!std::isfinite(v)) throw InputError("distance matrix contains a non-finite entry");
  }
  Metric m;
  m.size_ = n;
  m.matrix_ = std::move(entries);
  return m;
}

Metric Metric::from_coords(std::vector<std::vector<double>> coords) {
  if (coords.empty()) throw InputError("coordinate metric needs at least one element");
  const std::size_t dim = coords.front().size();
  if (dim == 0) throw InputError("coordinates must have positive dimension");
  for (const auto& c : coords) {
    if (c.size() != dim) throw InputError("coordinates have inconsistent dimensions");
    for (double v : c) {
      if (!std::isfinite(v)) throw InputError("coordinates contain a non-finite value");
    }
  }
  Metric m;
  m.size_ = coords.size();
  m.coords_ = std::move(coords);
  return m;
}

double Metric::operator()(std::size_t a, std::size_t b) const {
  if (!coords_.empty()) {
    const auto& x = coords_[a];
    const auto& y = coords_[b];
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double diff = x[i] - y[i];
      sum += diff * diff;
    }
    return std::sqrt(sum);
  }
  return matrix_[a * size_ + b];
}

Metric Metric::remapped(std::span<const std::size_t> source) const {
  if (!coords_.empty()) {
    std::vector<std::vector<double>> coords;
    coords.reserve(source.size());
    for (std::size_t s : source) coords.push_back(coords_[s]);
    return from_coords(std::move(coords));
  }
  const std::size_t n = source.size();
  std::vector<double> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = matrix_[source[i] * size_ + source[j]];
  }
  return from_matrix(n, std::move(entries));
}

Metric Metric::scaled(double factor) const {
  Metric m = *this;
  for (double& v : m.matrix_) v *= factor;
  for (auto& c : m.coords_) {
    for (double& v : c) v *= factor;
  }
  return m;
}

double cost_power(double distance, double z) {
  if (distance == 0.0) return 0.0;
  if (z == 1.0) return distance;
  if (z == 2.0) return distance * distance;
  return std::pow(distance, z);
}

Instance::Instance(std::vector<std::string> point_ids, std::vector<std::string> facility_ids,
                   Metric metric, std::vector<Group> groups, std::size_t k, double z)
    : point_ids_(std::move(point_ids)),
      facility_ids_(std::move(facility_ids)),
      metric_(std::move(metric)),
      groups_(std::move(groups)),
      k_(k),
      z_(z) {
  if (point_ids_.empty()) throw InputError("instance has no points");
  if (facility_ids_.empty()) throw InputError("instance has no facilities");
  std::unordered_set<std::string> seen;
  for (const auto* ids : {&point_ids_, &facility_ids_}) {
    for (const auto& id : *ids) {
      if (!seen.insert(id).second) throw InputError("duplicate element id '" + id + "'");
    }
  }
  if (metric_.size() != num_elements()) {
    throw InputError("metric covers " + std::to_string(metric_.size()) + " elements, expected " +
                     std::to_string(num_elements()));
  }
  if (groups_.empty()) throw InputError("instance has no groups");
  for (const auto& g : groups_) {
    if (g.members.empty()) throw InputError("group '" + g.name + "' is empty");
    if (g.members.size() != g.weights.size()) {
      throw InputError("group '" + g.name + "' has mismatched members and weights");
    }
    std::unordered_set<std::size_t> in_group;
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      if (g.members[i] >= num_points()) {
        throw InputError("group '" + g.name + "' references a non-point element");
      }
      if (!in_group.insert(g.members[i]).second) {
        throw InputError("group '" + g.name + "' lists point '" + point_ids_[g.members[i]] +
                         "' twice");
      }
      if (!(g.weights[i] > 0.0) || !std::isfinite(g.weights[i])) {
        throw InputError("group '" + g.name + "' has a non-positive or non-finite weight");
      }
    }
  }
  if (k_ < 1 || k_ > num_facilities()) {
    throw InputError("k must satisfy 1 <= k <= number of facilities");
  }
  if (!(z_ >= 1.0) || !std::isfinite(z_)) throw InputError("z must be a finite real >= 1");

  const std::size_t np = num_points();
  fp_distance_.resize(num_facilities() * np);
  for (std::size_t f = 0; f < num_facilities(); ++f) {
    for (std::size_t p = 0; p < np; ++p) fp_distance_[f * np + p] = metric_(np + f, p);
  }
}

bool Instance::groups_disjoint() const {
  std::vector<char> seen(num_points(), 0);
  for (const auto& g : groups_) {
    for (std::size_t p : g.members) {
      if (seen[p]) return false;
      seen[p] = 1;
    }
  }
  return true;
}

Instance Instance::with_z(double z) const {
  return Instance(point_ids_, facility_ids_, metric_, groups_, k_, z);
}

Instance Instance::with_k(std::size_t k) const {
  return Instance(point_ids_, facility_ids_, metric_, groups_, k, z_);
}

Instance Instance::with_groups(std::vector<Group> groups) const {
  return Instance(point_ids_, facility_ids_, metric_, std::move(groups), k_, z_);
}

Instance Instance::with_metric(Metric metric) const {
  return Instance(point_ids_, facility_ids_, std::move(metric), groups_, k_, z_);
}

bool Instance::operator==(const Instance& other) const {
  return point_ids_ == other.point_ids_ && facility_ids_ == other.facility_ids_ &&
         metric_ == other.metric_ && groups_ == other.groups_ && k_ == other.k_ &&
         z_ == other.z_;
}

CenterSet::CenterSet(std::vector<std::size_t> facilities) : facilities_(std::move(facilities)) {
  std::sort(facilities_.begin(), facilities_.end());
  facilities_.erase(std::unique(facilities_.begin(), facilities_.end()), facilities_.end());
}

CenterSet CenterSet::all(std::size_t num_facilities) {
  std::vector<std::size_t> f(num_facilities);
  std::iota(f.begin(), f.end(), 0);
  return CenterSet(std::move(f));
}

bool CenterSet::contains(std::size_t f) const {
  return std::binary_search(facilities_.begin(), facilities_.end(), f);
}

CenterSet CenterSet::united(const CenterSet& other) const {
  std::vector<std::size_t> merged;
  merged.reserve(size() + other.size());
  std::set_union(facilities_.begin(), facilities_.end(), other.facilities_.begin(),
                 other.facilities_.end(), std::back_inserter(merged));
  return CenterSet(std::move(merged));
}

namespace {

void require_usable(const Instance& inst, const CenterSet& centers) {
  if (centers.empty()) throw InputError("empty center set");
  if (centers.facilities().back() >= inst.num_facilities()) {
    throw InputError("center set references an unknown facility");
  }
}

}  // namespace

std::vector<double> Assignment::group_costs(std::size_t num_groups) const {
  std::vector<double> costs(num_groups, 0.0);
  for (const auto& e : entries) costs[e.group] += e.cost;
  return costs;
}

std::size_t nearest_center(const Instance& inst, const CenterSet& centers, std::size_t p) {
  std::size_t best = centers.facilities().front();
  double best_d = inst.facility_point_distance(best, p);
  for (std::size_t f : centers) {
    const double d = inst.facility_point_distance(f, p);
    if (d < best_d) {
      best_d = d;
      best = f;
    }
  }
  return best;
}

double cluster_cost(const Instance& inst, const CenterSet& centers, WeightedPoints points,
                    double z) {
  require_usable(inst, centers);
  double total = 0.0;
  for (std::size_t i = 0; i < points.points.size(); ++i) {
    const std::size_t p = points.points[i];
    const double d = inst.facility_point_distance(nearest_center(inst, centers, p), p);
    total += cost_power(d, z) * points.weights[i];
  }
  return total;
}

double cluster_cost(const Instance& inst, const CenterSet& centers, const Group& group) {
  return cluster_cost(inst, centers, as_weighted(group), inst.z());
}

FairCost fair_cost(const Instance& inst, const CenterSet& centers) {
  require_usable(inst, centers);
  FairCost out;
  out.per_group.reserve(inst.num_groups());
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    const double c = cluster_cost(inst, centers, inst.groups()[j]);
    out.per_group.push_back(c);
    if (j == 0 || c > out.value) {
      out.value = c;
      out.argmax_group = j;
    }
  }
  return out;
}

double unconstrained_cost(const Instance& inst, const CenterSet& centers) {
  require_usable(inst, centers);
  double total = 0.0;
  for (const auto& g : inst.groups()) total += cluster_cost(inst, centers, g);
  return total;
}

Assignment voronoi_partition(const Instance& inst, const CenterSet& centers) {
  require_usable(inst, centers);
  Assignment out;
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    const auto& g = inst.groups()[j];
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      const std::size_t p = g.members[i];
      const std::size_t c = nearest_center(inst, centers, p);
      const double d = inst.facility_point_distance(c, p);
      out.entries.push_back({j, p, c, d, cost_power(d, inst.z()) * g.weights[i]});
    }
  }
  return out;
}

Instance split_overlapping_groups(const Instance& inst) {
  const std::size_t np = inst.num_points();
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> memberships(np);
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    const auto& g = inst.groups()[j];
    for (std::size_t i = 0; i < g.members.size(); ++i) memberships[g.members[i]].push_back({j, i});
  }

  std::unordered_set<std::string> taken(inst.point_ids().begin(), inst.point_ids().end());
  taken.insert(inst.facility_ids().begin(), inst.facility_ids().end());

  std::vector<std::string> ids;
  std::vector<std::size_t> source;  // new element -> old element
  std::vector<Group> groups(inst.num_groups());
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    groups[j].name = inst.groups()[j].name;
    groups[j].members.resize(inst.groups()[j].members.size());
    groups[j].weights = inst.groups()[j].weights;
  }
  for (std::size_t p = 0; p < np; ++p) {
    const auto& ms = memberships[p];
    const std::size_t copies = std::max<std::size_t>(ms.size(), 1);
    for (std::size_t c = 0; c < copies; ++c) {
      std::string id = inst.point_ids()[p];
      if (c > 0) {
        std::size_t suffix = c + 1;
        id = inst.point_ids()[p] + "#" + std::to_string(suffix);
        while (taken.count(id)) id = inst.point_ids()[p] + "#" + std::to_string(++suffix);
        taken.insert(id);
      }
      if (c < ms.size()) groups[ms[c].first].members[ms[c].second] = ids.size();
      ids.push_back(std::move(id));
      source.push_back(p);
    }
  }
  for (std::size_t f = 0; f < inst.num_facilities(); ++f) source.push_back(np + f);

  return Instance(std::move(ids), inst.facility_ids(), inst.metric().remapped(source),
                  std::move(groups), inst.k(), inst.z());
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kSymmetry: return "symmetry";
    case ViolationKind::kNegative: return "negative";
    case ViolationKind::kDiagonal: return "diagonal";
    case ViolationKind::kTriangle: return "triangle";
    case ViolationKind::kRelaxedTriangle: return "relaxed_triangle";
  }
  return "unknown";
}

MetricReport validate_metric(const Instance& inst, const MetricCheckOptions& opts) {
  const std::size_t n = inst.num_elements();
  const double tol = opts.tolerance;
  MetricReport report;
  auto record = [&](ViolationKind kind, std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                    double excess) {
    if (report.samples.size() < opts.max_samples) report.samples.push_back({kind, a, b, c, d, excess});
  };

  // Pairwise table so the triple scans hit memory, not the backend.
  std::vector<double> dist(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) dist[a * n + b] = inst.distance(a, b);
  }
  auto d = [&](std::size_t a, std::size_t b) { return dist[a * n + b]; };

  for (std::size_t a = 0; a < n; ++a) {
    if (std::abs(d(a, a)) > tol) {
      ++report.diagonal_violations;
      record(ViolationKind::kDiagonal, a, a, a, a, std::abs(d(a, a)));
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (d(a, b) < 0.0) {
        ++report.negative_violations;
        record(ViolationKind::kNegative, a, b, b, b, -d(a, b));
      }
      if (a < b && std::abs(d(a, b) - d(b, a)) > tol) {
        ++report.symmetry_violations;
        record(ViolationKind::kSymmetry, a, b, b, b, std::abs(d(a, b) - d(b, a)));
      }
    }
  }

  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    ++report.triples_checked;
    const double excess = d(a, c) - d(a, b) - d(b, c);
    if (excess > tol) {
      ++report.triangle_violations;
      record(ViolationKind::kTriangle, a, b, c, c, excess);
    }
  };

  Rng rng(opts.seed);
  if (n <= opts.exhaustive_limit) {
    report.exhaustive = true;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) check_triple(a, b, c);
      }
    }
  } else {
    const std::uint64_t samples = 10ULL * n * n;
    for (std::uint64_t s = 0; s < samples; ++s) check_triple(rng.below(n), rng.below(n), rng.below(n));
  }

  const double z = inst.z();
  const double factor = std::pow(3.0, z - 1.0);
  for (std::uint64_t s = 0; s < opts.quadruple_samples; ++s) {
    const std::size_t q = rng.below(n), r = rng.below(n), t = rng.below(n), u = rng.below(n);
    ++report.quadruples_checked;
    const double lhs = cost_power(d(q, u), z);
    const double rhs =
        factor * (cost_power(d(q, r), z) + cost_power(d(r, t), z) + cost_power(d(t, u), z));
    if (lhs - rhs > tol * std::max(1.0, rhs)) {
      ++report.relaxed_triangle_violations;
      record(ViolationKind::kRelaxedTriangle, q, r, t, u, lhs - rhs);
    }
  }
  return report;
}

}  // namespace fairclust
