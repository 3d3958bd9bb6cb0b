#include "kernrl/ball_world.hpp"

#include <algorithm>
#include <cmath>

#include "kernrl/errors.hpp"

namespace kernrl {

namespace {

constexpr std::array<std::array<double, 2>, 4> kDirections{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}};

std::array<double, 2> to_array(const Point& x) {
  const auto c = x.coords();
  if (c.size() != 2) throw InvalidInput("ball world states are 2-dimensional");
  return {c[0], c[1]};
}

Point to_point(std::array<double, 2> p) { return Point::continuous({p[0], p[1]}); }

}  // namespace

std::array<double, 2> project_to_unit_ball(std::array<double, 2> p) {
  const double norm = std::hypot(p[0], p[1]);
  if (norm <= 1.0) return p;
  return {p[0] / norm, p[1] / norm};
}

BallWorldEnv::BallWorldEnv(BallWorldConfig config) : config_(config) {
  if (config_.horizon == 0) throw InvalidConfig("ball world horizon must be positive");
  if (config_.period == 0) throw InvalidConfig("ball world change period must be positive");
  if (config_.noise_std < 0.0 || config_.step_size < 0.0 || config_.reward_noise < 0.0) {
    throw InvalidConfig("ball world noise and step size must be non-negative");
  }
  if (config_.bump_radius <= 0.0) throw InvalidConfig("bump radius must be positive");
}

Point BallWorldEnv::reset(std::size_t) { return Point::continuous({0.0, 0.0}); }

double BallWorldEnv::mean_reward(std::size_t episode, const Point& x) const {
  const auto p = to_array(x);
  const auto& b = config_.coefficients[block(episode)];
  double r = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = std::hypot(p[0] - config_.centers[i][0], p[1] - config_.centers[i][1]);
    r += b[i] * std::max(0.0, 1.0 - d / config_.bump_radius);
  }
  return std::clamp(r, 0.0, 1.0);
}

double BallWorldEnv::lipschitz_constant(std::size_t episode) const {
  const auto& b = config_.coefficients[block(episode)];
  return (b[0] + b[1] + b[2] + b[3]) / config_.bump_radius;
}

double BallWorldEnv::true_mean_reward(std::size_t episode, std::size_t, const Point& x,
                                      ActionId) const {
  return mean_reward(episode, x);
}

Point BallWorldEnv::mean_next_state(std::size_t, std::size_t, const Point& x, ActionId a) const {
  if (a >= 4) throw InvalidInput("ball world has 4 actions");
  const auto p = to_array(x);
  return to_point(project_to_unit_ball({p[0] + config_.step_size * kDirections[a][0],
                                        p[1] + config_.step_size * kDirections[a][1]}));
}

StepResult BallWorldEnv::step(std::size_t episode, std::size_t, const Point& x, ActionId a,
                              Rng& rng) {
  if (a >= 4) throw InvalidInput("ball world has 4 actions");
  const auto p = to_array(x);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double nx = noise(rng);
  const double ny = noise(rng);
  auto next = project_to_unit_ball({p[0] + config_.step_size * kDirections[a][0] + config_.noise_std * nx,
                                    p[1] + config_.step_size * kDirections[a][1] + config_.noise_std * ny});
  double reward = mean_reward(episode, x);
  if (config_.reward_noise > 0.0) {
    std::uniform_real_distribution<double> u(-config_.reward_noise, config_.reward_noise);
    reward = std::clamp(reward + u(rng), 0.0, 1.0);
  }
  return {reward, to_point(next)};
}

std::vector<std::size_t> BallWorldEnv::change_episodes(std::size_t num_episodes) const {
  std::vector<std::size_t> out;
  for (std::size_t k = config_.period; k < num_episodes; k += config_.period) {
    if (block(k) != block(k - 1)) out.push_back(k);
  }
  return out;
}

std::vector<Point> BallWorldEnv::sample_states(std::size_t resolution) const {
  if (resolution < 2) throw InvalidInput("grid resolution must be at least 2");
  std::vector<Point> out;
  const double n = static_cast<double>(resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    // (lo * (n - i) + hi * i) / n keeps grid values such as 0.8 exact
    const double x = (-(n - static_cast<double>(i)) + static_cast<double>(i)) / n;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double y = (-(n - static_cast<double>(j)) + static_cast<double>(j)) / n;
      if (x * x + y * y <= 1.0) out.push_back(Point::continuous({x, y}));
    }
  }
  return out;
}

std::unique_ptr<Environment> BallWorldEnv::clone() const {
  return std::make_unique<BallWorldEnv>(*this);
}

}  // namespace kernrl
