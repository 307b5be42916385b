#include "fairclust/subsets.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "fairclust/error.hpp"

namespace fairclust {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  std::vector<std::size_t> combo(k);
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = next; c < n; ++c) {
      const std::uint64_t block = binomial(n - c - 1, k - i - 1);
      if (rank < block) {
        combo[i] = c;
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return combo;
}

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  std::size_t i = k;
  while (i > 0 && combo[i - 1] == n - k + (i - 1)) --i;
  if (i == 0) return false;
  ++combo[i - 1];
  for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

SubsetScorer::SubsetScorer(const Instance& inst, std::vector<std::size_t> candidates)
    : candidates_(std::move(candidates)), num_groups_(inst.num_groups()) {
  std::vector<std::size_t> points;
  std::vector<double> weights;
  for (std::size_t j = 0; j < inst.num_groups(); ++j) {
    const auto& g = inst.groups()[j];
    points.insert(points.end(), g.members.begin(), g.members.end());
    weights.insert(weights.end(), g.weights.begin(), g.weights.end());
    entry_group_.insert(entry_group_.end(), g.members.size(), j);
  }
  num_entries_ = points.size();
  cost_.resize(candidates_.size() * num_entries_);
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    for (std::size_t e = 0; e < num_entries_; ++e) {
      cost_[c * num_entries_ + e] =
          cost_power(inst.facility_point_distance(candidates_[c], points[e]), inst.z()) *
          weights[e];
    }
  }
}

double SubsetScorer::fair(std::span<const std::size_t> positions,
                          std::vector<double>& scratch) const {
  scratch.assign(num_groups_, 0.0);
  for (std::size_t e = 0; e < num_entries_; ++e) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t pos : positions) best = std::min(best, cost_[pos * num_entries_ + e]);
    scratch[entry_group_[e]] += best;
  }
  return *std::max_element(scratch.begin(), scratch.end());
}

double SubsetScorer::unconstrained(std::span<const std::size_t> positions) const {
  double total = 0.0;
  for (std::size_t e = 0; e < num_entries_; ++e) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t pos : positions) best = std::min(best, cost_[pos * num_entries_ + e]);
    total += best;
  }
  return total;
}

BestSubset minimize_over_subsets(std::size_t n, std::size_t k, std::uint64_t cap,
                                 std::size_t workers, const SubsetObjective& objective) {
  if (k == 0 || k > n) throw InputError("subset size must satisfy 1 <= k <= n");
  const std::uint64_t total = binomial(n, k);
  if (total > cap) {
    throw ResourceCapError("enumerating C(" + std::to_string(n) + ", " + std::to_string(k) +
                           ") subsets exceeds the cap of " + std::to_string(cap) +
                           "; use a smaller k, a larger epsilon, or raise the cap");
  }
  workers = std::max<std::size_t>(1, std::min<std::uint64_t>(workers, total));

  std::vector<BestSubset> partial(workers);
  auto scan = [&](std::size_t w) {
    const std::uint64_t begin = total / workers * w + std::min<std::uint64_t>(w, total % workers);
    const std::uint64_t count = total / workers + (w < total % workers ? 1 : 0);
    BestSubset& best = partial[w];
    best.cost = std::numeric_limits<double>::infinity();
    std::vector<double> scratch;
    std::vector<std::size_t> combo = unrank_combination(n, k, begin);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double c = objective(combo, scratch);
      if (best.positions.empty() || c < best.cost) {
        best.cost = c;
        best.positions = combo;
      }
      ++best.enumerated;
      if (i + 1 < count) next_combination(combo, n);
    }
  };

  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(scan, w);
    for (auto& t : threads) t.join();
  }

  BestSubset result = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    result.enumerated += partial[w].enumerated;
    if (partial[w].cost < result.cost) {
      result.cost = partial[w].cost;
      result.positions = std::move(partial[w].positions);
    }
  }
  return result;
}

}  // namespace fairclust
