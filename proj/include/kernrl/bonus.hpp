#pragma once

#include <cstddef>

namespace kernrl {

/// Exploration bonus as a function of the generalized count C = beta + sum of weights.
struct BonusConfig {
  enum class Mode { experiment, simple, theory };

  Mode mode = Mode::experiment;

  // experiment: c_exp / sqrt(C) + beta H / C
  double c_exp = 0.1;

  // simple: c1 H / sqrt(C) + c2 beta H / C + c3 L1 sigma
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;

  // theory: confidence-interval widths with covering numbers ceil((diameter / eps)^d1)
  double delta = 0.1;
  double d1 = 1.0;
  double d2 = 1.0;
  double lipschitz_reward = 1.0;
  double lipschitz_transition = 1.0;
  std::size_t num_episodes = 1000;
  double diameter = 2.0;
  double kernel_c1 = 1.0;
  double kernel_c2 = 0.6065306597126334;  // max |d/dz exp(-z^2/2)| = exp(-1/2)
};

/// Quantities the bonus depends on besides the count.
struct BonusContext {
  std::size_t horizon = 1;
  double beta = 0.01;
  double sigma = 0.0;
  double lipschitz_q = 0.0;
};

/// Throws InvalidConfig for negative constants or delta outside (0, 1).
void validate(const BonusConfig& config);

/// Bonus at count C (C >= beta > 0) in episode k (1-based count of episodes seen, used by theory mode).
double bonus(double count, std::size_t episode, const BonusConfig& config, const BonusContext& ctx);

/// Covering-number approximation ceil((diameter / eps)^d), at least 1.
double covering_number(double diameter, double eps, double dim);

/// log(z + e).
double log_plus(double z);

}  // namespace kernrl
