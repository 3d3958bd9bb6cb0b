#include "kernrl/variation.hpp"

#include <algorithm>
#include <cmath>

#include "kernrl/errors.hpp"
#include "kernrl/tabular_env.hpp"

namespace kernrl {

double reward_variation(const Environment& env, std::size_t first, std::size_t last,
                        std::size_t resolution) {
  if (last <= first) return 0.0;
  const auto states = env.sample_states(resolution);
  double total = 0.0;
  // between change episodes the MDP is constant, so only pairs straddling a change contribute
  for (std::size_t change : env.change_episodes(last + 1)) {
    if (change <= first) continue;
    const std::size_t i = change - 1;
    for (std::size_t h = 0; h < env.horizon(); ++h) {
      double sup = 0.0;
      for (const auto& x : states) {
        for (ActionId a = 0; a < env.num_actions(); ++a) {
          sup = std::max(sup, std::abs(env.true_mean_reward(i, h, x, a) -
                                       env.true_mean_reward(i + 1, h, x, a)));
        }
      }
      total += sup;
    }
  }
  return total;
}

double mdp_variation_reward(const Environment& env, std::size_t num_episodes,
                            std::size_t resolution) {
  if (num_episodes < 2) return 0.0;
  return reward_variation(env, 0, num_episodes - 1, resolution);
}

double mdp_variation_transition_tv(const Environment& env, std::size_t num_episodes) {
  const auto* tab = dynamic_cast<const TabularNSEnv*>(&env);
  if (tab == nullptr) {
    throw UnsupportedOperation("total-variation transition drift needs a finite environment");
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < num_episodes; ++i) {
    const auto& p = tab->block_at(i).transitions;
    const auto& q = tab->block_at(i + 1).transitions;
    if (&p == &q) continue;
    for (std::size_t h = 0; h < tab->horizon(); ++h) {
      double worst = 0.0;
      for (std::size_t x = 0; x < tab->num_states(); ++x) {
        for (std::size_t a = 0; a < tab->num_actions(); ++a) {
          double l1 = 0.0;
          for (std::size_t y = 0; y < tab->num_states(); ++y) l1 += std::abs(p[h][x][a][y] - q[h][x][a][y]);
          worst = std::max(worst, l1);
        }
      }
      total += worst;
    }
  }
  return total;
}

}  // namespace kernrl
