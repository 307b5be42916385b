#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fairclust {

// Distance oracle over the elements P ⊕ F. Element indices place the points
// first (0..n_P-1) followed by the facilities (n_P..n_P+n_F-1).
class Metric {
 public:
  Metric() = default;

  // Row-major n x n matrix.
  static Metric from_matrix(std::size_t n, std::vector<double> entries);
  // One coordinate vector per element; all of equal dimension.
  static Metric from_coords(std::vector<std::vector<double>> coords);

  double operator()(std::size_t a, std::size_t b) const;

  std::size_t size() const { return size_; }
  bool is_matrix() const { return !matrix_.empty() || coords_.empty(); }
  const std::vector<double>& matrix() const { return matrix_; }
  const std::vector<std::vector<double>>& coords() const { return coords_; }

  // Metric restricted to / reindexed by `source` (new element i behaves as
  // old element source[i]).
  Metric remapped(std::span<const std::size_t> source) const;
  // Every distance multiplied by `factor`.
  Metric scaled(double factor) const;

  bool operator==(const Metric&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> matrix_;
  std::vector<std::vector<double>> coords_;
};

struct Group {
  std::string name;
  std::vector<std::size_t> members;  // point indices
  std::vector<double> weights;       // aligned with members

  bool operator==(const Group&) const = default;
};

// d^z with d = 0 mapped to 0.
double cost_power(double distance, double z);

// Immutable problem instance. The constructor enforces the structural
// invariants (ids, group membership, weights, k, z, metric shape); metric
// axioms are checked separately by validate_metric.
class Instance {
 public:
  Instance(std::vector<std::string> point_ids, std::vector<std::string> facility_ids,
           Metric metric, std::vector<Group> groups, std::size_t k, double z);

  std::size_t num_points() const { return point_ids_.size(); }
  std::size_t num_facilities() const { return facility_ids_.size(); }
  std::size_t num_groups() const { return groups_.size(); }
  // n = |P ∪ F|
  std::size_t num_elements() const { return num_points() + num_facilities(); }
  std::size_t k() const { return k_; }
  double z() const { return z_; }

  const std::vector<std::string>& point_ids() const { return point_ids_; }
  const std::vector<std::string>& facility_ids() const { return facility_ids_; }
  const std::vector<Group>& groups() const { return groups_; }
  const Metric& metric() const { return metric_; }

  std::size_t facility_element(std::size_t f) const { return num_points() + f; }
  double distance(std::size_t element_a, std::size_t element_b) const {
    return metric_(element_a, element_b);
  }
  double facility_point_distance(std::size_t f, std::size_t p) const {
    return fp_distance_[f * num_points() + p];
  }

  // True when no point belongs to more than one group.
  bool groups_disjoint() const;

  Instance with_z(double z) const;
  Instance with_k(std::size_t k) const;
  Instance with_groups(std::vector<Group> groups) const;
  Instance with_metric(Metric metric) const;

  bool operator==(const Instance& other) const;

 private:
  std::vector<std::string> point_ids_;
  std::vector<std::string> facility_ids_;
  Metric metric_;
  std::vector<Group> groups_;
  std::size_t k_;
  double z_;
  std::vector<double> fp_distance_;
};

// Canonical set of facility indices: deduplicated and sorted by declared
// facility order.
class CenterSet {
 public:
  CenterSet() = default;
  explicit CenterSet(std::vector<std::size_t> facilities);

  static CenterSet all(std::size_t num_facilities);

  const std::vector<std::size_t>& facilities() const { return facilities_; }
  std::size_t size() const { return facilities_.size(); }
  bool empty() const { return facilities_.empty(); }
  bool contains(std::size_t f) const;
  auto begin() const { return facilities_.begin(); }
  auto end() const { return facilities_.end(); }

  CenterSet united(const CenterSet& other) const;

  bool operator==(const CenterSet&) const = default;
  auto operator<=>(const CenterSet&) const = default;

 private:
  std::vector<std::size_t> facilities_;
};

struct WeightedPoints {
  std::span<const std::size_t> points;
  std::span<const double> weights;
};

inline WeightedPoints as_weighted(const Group& g) { return {g.members, g.weights}; }

struct FairCost {
  double value = 0.0;
  std::vector<double> per_group;
  std::size_t argmax_group = 0;
};

struct AssignedPoint {
  std::size_t group;
  std::size_t point;
  std::size_t center;  // facility index
  double distance;
  double cost;  // distance^z * weight
};

// One entry per (group, member) pair in group order.
struct Assignment {
  std::vector<AssignedPoint> entries;

  std::vector<double> group_costs(std::size_t num_groups) const;
};

// Index into C of the nearest center to point p; ties go to the lowest
// facility index.
std::size_t nearest_center(const Instance& inst, const CenterSet& centers, std::size_t p);

// Σ_{p∈S} d(C,p)^z · w(p)
double cluster_cost(const Instance& inst, const CenterSet& centers, WeightedPoints points,
                    double z);
double cluster_cost(const Instance& inst, const CenterSet& centers, const Group& group);

// max_j cost(C, P_j) with the per-group vector; argmax ties to lowest index.
FairCost fair_cost(const Instance& inst, const CenterSet& centers);

// Σ_j cost(C, P_j)
double unconstrained_cost(const Instance& inst, const CenterSet& centers);

Assignment voronoi_partition(const Instance& inst, const CenterSet& centers);

// Each point belonging to t > 1 groups is replaced by t zero-distance copies,
// one per group. The first copy keeps the original id; further copies are
// named "<id>#<i>". Facilities are unchanged.
Instance split_overlapping_groups(const Instance& inst);

enum class ViolationKind { kSymmetry, kNegative, kDiagonal, kTriangle, kRelaxedTriangle };

struct MetricViolation {
  ViolationKind kind;
  std::size_t a, b, c, d;  // element indices; unused slots repeat the last
  double excess;
};

struct MetricReport {
  std::size_t symmetry_violations = 0;
  std::size_t negative_violations = 0;
  std::size_t diagonal_violations = 0;
  std::size_t triangle_violations = 0;
  std::size_t relaxed_triangle_violations = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t quadruples_checked = 0;
  bool exhaustive = false;
  std::vector<MetricViolation> samples;  // first few violations found

  std::size_t total() const {
    return symmetry_violations + negative_violations + diagonal_violations +
           triangle_violations + relaxed_triangle_violations;
  }
  bool ok() const { return total() == 0; }
};

struct MetricCheckOptions {
  double tolerance = 1e-9;
  std::size_t exhaustive_limit = 200;
  std::uint64_t quadruple_samples = 20000;
  std::uint64_t seed = 0;
  std::size_t max_samples = 50;
};

// Symmetry, nonnegativity, zero diagonal and triangle inequality (exhaustive
// up to exhaustive_limit elements, 10·n² sampled triples above), plus sampled
// checks of d(q,t)^z ≤ 3^{z-1}(d(q,r)^z + d(r,s)^z + d(s,t)^z).
MetricReport validate_metric(const Instance& inst, const MetricCheckOptions& opts = {});

const char* to_string(ViolationKind kind);

}  // namespace fairclust
