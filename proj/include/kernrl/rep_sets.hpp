#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "kernrl/metric.hpp"

namespace kernrl {

/// Representative state-action pairs and next states of one step.
///
/// Pairs are stored jointly, as a list of (state, action) tuples, rather than as the
/// product of a state set and an action set. Insertion is greedy: a point is kept only if
/// it is farther than the threshold from every stored point, so stored points are pairwise
/// separated by more than the threshold. Projections break ties by lowest insertion index.
class RepSets {
 public:
  struct Update {
    bool pair_added = false;
    bool next_added = false;
    std::size_t pair_index = 0;  ///< projection of the pair after the update
    std::size_t next_index = 0;  ///< projection of the next state after the update
  };

  RepSets(double eps, double eps_next, MetricSpec metric);

  Update update(const StateAction& pair, const Point& next, std::size_t episode);

  /// Throws InvalidInput when no pair is stored.
  std::size_t project_pair(const StateAction& pair) const;
  std::size_t project_next(const Point& next) const;

  const std::vector<StateAction>& pairs() const { return pairs_; }
  const std::vector<Point>& next_states() const { return next_; }
  const std::vector<std::size_t>& pair_episodes() const { return pair_episode_; }
  const std::vector<std::size_t>& next_episodes() const { return next_episode_; }
  double eps() const { return eps_; }
  double eps_next() const { return eps_next_; }
  const MetricSpec& metric() const { return metric_; }

  /// CSV rows "h,kind,coords...,inserted_episode" (discrete states print their id).
  void dump_csv(std::ostream& os, std::size_t step) const;

 private:
  double eps_;
  double eps_next_;
  MetricSpec metric_;
  std::vector<StateAction> pairs_;
  std::vector<std::size_t> pair_episode_;
  std::vector<Point> next_;
  std::vector<std::size_t> next_episode_;
};

/// Greedy eps-net: keep a point iff it is farther than eps from all kept points.
/// Returns the indices of the kept points, in input order.
template <typename T, typename Dist>
std::vector<std::size_t> greedy_cover_indices(const std::vector<T>& points, double eps, Dist dist) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool far = true;
    for (std::size_t j : kept) {
      if (!(dist(points[i], points[j]) > eps)) {
        far = false;
        break;
      }
    }
    if (far) kept.push_back(i);
  }
  return kept;
}

}  // namespace kernrl
