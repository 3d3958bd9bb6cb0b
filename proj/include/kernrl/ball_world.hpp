#pragma once

#include <array>

#include "kernrl/environment.hpp"

namespace kernrl {

/// Four-action navigation in the closed unit ball of R^2 with moving reward bumps.
///
/// Actions move by `step_size` right, left, up or down (ids 0..3) plus Gaussian
/// noise per coordinate; a successor outside the ball is radially projected back.
/// The mean reward is sum_i b_i max(0, 1 - |x - c_i| / bump_radius) where the
/// coefficients b switch every `period` episodes, cycling through four blocks.
struct BallWorldConfig {
  std::size_t horizon = 15;
  std::size_t period = 1000;
  double noise_std = 0.01;
  double step_size = 0.1;
  double bump_radius = 0.5;
  /// Bounded uniform reward noise of this half-width (0 = deterministic rewards).
  double reward_noise = 0.0;
  std::array<std::array<double, 2>, 4> centers{{{0.8, 0.0}, {0.0, 0.8}, {-0.8, 0.0}, {0.0, -0.8}}};
  std::array<std::array<double, 4>, 4> coefficients{{{0.25, 0.0, 0.0, 0.0},
                                                     {0.25, 0.5, 0.0, 0.0},
                                                     {0.25, 0.5, 0.75, 0.0},
                                                     {0.25, 0.5, 0.75, 1.0}}};
};

enum class BallAction : ActionId { right = 0, left = 1, up = 2, down = 3 };

class BallWorldEnv final : public Environment {
 public:
  explicit BallWorldEnv(BallWorldConfig config = {});

  const BallWorldConfig& config() const { return config_; }

  std::size_t horizon() const override { return config_.horizon; }
  std::size_t num_actions() const override { return 4; }
  MetricSpec metric() const override { return {}; }

  Point reset(std::size_t episode) override;
  StepResult step(std::size_t episode, std::size_t step, const Point& x, ActionId a,
                  Rng& rng) override;
  double true_mean_reward(std::size_t episode, std::size_t step, const Point& x,
                          ActionId a) const override;
  std::vector<std::size_t> change_episodes(std::size_t num_episodes) const override;
  std::vector<Point> sample_states(std::size_t resolution) const override;
  Point mean_next_state(std::size_t episode, std::size_t step, const Point& x,
                        ActionId a) const override;
  std::unique_ptr<Environment> clone() const override;

  std::size_t block(std::size_t episode) const { return (episode / config_.period) % 4; }
  double mean_reward(std::size_t episode, const Point& x) const;
  /// Lipschitz constant of the mean reward in x: sum_i b_i / bump_radius.
  double lipschitz_constant(std::size_t episode) const;

 private:
  BallWorldConfig config_;
};

/// Radial projection onto the closed unit ball.
std::array<double, 2> project_to_unit_ball(std::array<double, 2> p);

}  // namespace kernrl
