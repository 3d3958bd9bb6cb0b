#include "kernrl/tabular_env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernrl/errors.hpp"

namespace kernrl {

TabularNSEnv::TabularNSEnv(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
                           std::vector<TabularBlock> blocks, std::vector<std::size_t> change_points,
                           std::size_t initial_state)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      blocks_(std::move(blocks)),
      change_points_(std::move(change_points)),
      initial_state_(initial_state) {
  if (num_states_ == 0 || num_actions_ == 0 || horizon_ == 0) {
    throw InvalidConfig("tabular env needs at least one state, action and step");
  }
  if (blocks_.empty()) throw InvalidConfig("tabular env needs at least one block");
  if (initial_state_ >= num_states_) throw InvalidConfig("initial state out of range");
  if (!std::is_sorted(change_points_.begin(), change_points_.end())) {
    throw InvalidConfig("change points must be sorted");
  }
  for (const auto& b : blocks_) {
    if (b.rewards.size() != horizon_ || b.transitions.size() != horizon_) {
      throw InvalidConfig("block tables must have one entry per step");
    }
    for (std::size_t h = 0; h < horizon_; ++h) {
      if (b.rewards[h].size() != num_states_ || b.transitions[h].size() != num_states_) {
        throw InvalidConfig("block tables must have one entry per state");
      }
      for (std::size_t x = 0; x < num_states_; ++x) {
        if (b.rewards[h][x].size() != num_actions_ || b.transitions[h][x].size() != num_actions_) {
          throw InvalidConfig("block tables must have one entry per action");
        }
        for (std::size_t a = 0; a < num_actions_; ++a) {
          const double r = b.rewards[h][x][a];
          if (!(r >= 0.0 && r <= 1.0)) throw InvalidConfig("rewards must lie in [0, 1]");
          const auto& row = b.transitions[h][x][a];
          if (row.size() != num_states_) throw InvalidConfig("transition rows must cover all states");
          double mass = 0.0;
          for (double p : row) {
            if (p < 0.0) throw InvalidConfig("negative transition probability");
            mass += p;
          }
          if (std::abs(mass - 1.0) > 1e-12) {
            throw InvalidConfig("transition row (h=" + std::to_string(h) + ", x=" +
                                std::to_string(x) + ", a=" + std::to_string(a) +
                                ") does not sum to 1");
          }
        }
      }
    }
  }
}

const TabularBlock& TabularNSEnv::block_at(std::size_t episode) const {
  const auto passed = static_cast<std::size_t>(
      std::upper_bound(change_points_.begin(), change_points_.end(), episode) - change_points_.begin());
  return blocks_[passed % blocks_.size()];
}

Point TabularNSEnv::reset(std::size_t) { return Point::discrete(initial_state_); }

StepResult TabularNSEnv::step(std::size_t episode, std::size_t step, const Point& x, ActionId a,
                              Rng& rng) {
  if (x.id() >= num_states_ || a >= num_actions_) throw InvalidInput("state or action out of range");
  const auto& row = block_at(episode).transitions[step][x.id()][a];
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double draw = u(rng);
  double acc = 0.0;
  std::size_t next = num_states_ - 1;
  for (std::size_t y = 0; y < num_states_; ++y) {
    acc += row[y];
    if (draw < acc) {
      next = y;
      break;
    }
  }
  // rows with trailing zeros must not fall through to an impossible state
  while (row[next] == 0.0 && next > 0) --next;
  return {block_at(episode).rewards[step][x.id()][a], Point::discrete(next)};
}

double TabularNSEnv::true_mean_reward(std::size_t episode, std::size_t step, const Point& x,
                                      ActionId a) const {
  return block_at(episode).rewards[step][x.id()][a];
}

std::vector<std::size_t> TabularNSEnv::change_episodes(std::size_t num_episodes) const {
  std::vector<std::size_t> out;
  for (std::size_t k : change_points_) {
    if (k > 0 && k < num_episodes && (out.empty() || out.back() != k)) out.push_back(k);
  }
  return out;
}

std::vector<Point> TabularNSEnv::sample_states(std::size_t) const {
  std::vector<Point> out;
  out.reserve(num_states_);
  for (std::size_t x = 0; x < num_states_; ++x) out.push_back(Point::discrete(x));
  return out;
}

std::unique_ptr<Environment> TabularNSEnv::clone() const {
  return std::make_unique<TabularNSEnv>(*this);
}

}  // namespace kernrl
