#pragma once

#include "kernrl/environment.hpp"

namespace kernrl {

/// One MDP "block": rewards[h][x][a] and transitions[h][x][a][y].
struct TabularBlock {
  std::vector<std::vector<std::vector<double>>> rewards;
  std::vector<std::vector<std::vector<std::vector<double>>>> transitions;
};

/// Finite non-stationary MDP. The active block at episode k is
/// (number of change episodes <= k) mod blocks.size().
class TabularNSEnv final : public Environment {
 public:
  TabularNSEnv(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
               std::vector<TabularBlock> blocks, std::vector<std::size_t> change_points,
               std::size_t initial_state = 0);

  std::size_t horizon() const override { return horizon_; }
  std::size_t num_actions() const override { return num_actions_; }
  std::size_t num_states() const { return num_states_; }
  MetricSpec metric() const override { return {StateMetric::discrete}; }

  Point reset(std::size_t episode) override;
  StepResult step(std::size_t episode, std::size_t step, const Point& x, ActionId a,
                  Rng& rng) override;
  double true_mean_reward(std::size_t episode, std::size_t step, const Point& x,
                          ActionId a) const override;
  std::vector<std::size_t> change_episodes(std::size_t num_episodes) const override;
  std::vector<Point> sample_states(std::size_t resolution) const override;
  std::unique_ptr<Environment> clone() const override;

  const TabularBlock& block_at(std::size_t episode) const;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::size_t horizon_;
  std::vector<TabularBlock> blocks_;
  std::vector<std::size_t> change_points_;
  std::size_t initial_state_;
};

}  // namespace kernrl
