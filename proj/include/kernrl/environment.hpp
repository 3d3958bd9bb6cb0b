#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <vector>

#include "kernrl/metric.hpp"

namespace kernrl {

using Rng = std::mt19937_64;

struct StepResult {
  double reward = 0.0;
  Point next_state;
};

/// An episodic MDP whose rewards and transitions may change between episodes.
///
/// Episodes and steps are 0-based. The oracle-only accessors (true_mean_reward,
/// mean_next_state, change_episodes) are never consulted by agents.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t horizon() const = 0;
  virtual std::size_t num_actions() const = 0;
  virtual MetricSpec metric() const = 0;

  virtual Point reset(std::size_t episode) = 0;
  virtual StepResult step(std::size_t episode, std::size_t step, const Point& x, ActionId a,
                          Rng& rng) = 0;

  virtual double true_mean_reward(std::size_t episode, std::size_t step, const Point& x,
                                  ActionId a) const = 0;

  /// Episodes k > 0 such that the MDP at k differs from the MDP at k - 1, restricted to k < num_episodes.
  virtual std::vector<std::size_t> change_episodes(std::size_t num_episodes) const = 0;

  /// A finite set of states over which suprema are approximated.
  virtual std::vector<Point> sample_states(std::size_t resolution) const = 0;

  /// Noise-free successor state. Only environments with mean dynamics override this.
  virtual Point mean_next_state(std::size_t episode, std::size_t step, const Point& x,
                                ActionId a) const;

  virtual std::unique_ptr<Environment> clone() const = 0;
};

}  // namespace kernrl
