#pragma once

#include <cstddef>

#include "kernrl/environment.hpp"

namespace kernrl {

/// Sum over consecutive episode pairs (i, i+1) with first <= i < last of
/// sum_h sup_{x,a} |r_h^i(x,a) - r_h^{i+1}(x,a)|, the sup taken over env.sample_states(resolution).
/// Additive over adjacent ranges: [a, b) + [b, c) = [a, c).
double reward_variation(const Environment& env, std::size_t first, std::size_t last,
                        std::size_t resolution = 201);

/// Reward variation over K episodes, i.e. reward_variation(env, 0, K - 1).
double mdp_variation_reward(const Environment& env, std::size_t num_episodes,
                            std::size_t resolution = 201);

/// Total-variation surrogate for the transition variation: sum over consecutive episode pairs of
/// sum_h max_{x,a} ||P_h^i(.|x,a) - P_h^{i+1}(.|x,a)||_1. Only finite environments are supported.
double mdp_variation_transition_tv(const Environment& env, std::size_t num_episodes);

}  // namespace kernrl
