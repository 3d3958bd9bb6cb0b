#include "kernrl/bonus.hpp"

#include <cmath>
#include <numbers>

#include "kernrl/errors.hpp"

namespace kernrl {

void validate(const BonusConfig& c) {
  if (c.c_exp < 0.0 || c.c1 < 0.0 || c.c2 < 0.0 || c.c3 < 0.0) {
    throw InvalidConfig("bonus multipliers must be non-negative");
  }
  if (c.mode == BonusConfig::Mode::theory) {
    if (!(c.delta > 0.0 && c.delta < 1.0)) throw InvalidConfig("bonus delta must lie in (0, 1)");
    if (c.d1 < 0.0 || c.d2 < 0.0 || c.lipschitz_reward < 0.0 || c.lipschitz_transition < 0.0 ||
        c.diameter <= 0.0 || c.kernel_c1 <= 0.0 || c.kernel_c2 < 0.0 || c.num_episodes == 0) {
      throw InvalidConfig("theory bonus constants out of range");
    }
  }
}

double log_plus(double z) { return std::log(z + std::numbers::e); }

double covering_number(double diameter, double eps, double dim) {
  if (dim == 0.0) return 1.0;
  if (!(eps > 0.0)) throw InvalidConfig("covering number needs a positive scale (sigma > 0 or d1 = 0)");
  return std::max(1.0, std::ceil(std::pow(diameter / eps, dim)));
}

namespace {

// Half-width of the weighted-average confidence interval: the data-dependent
// part of the reward (scale 1) or transition (scale H) bonus.
double theory_bonus(double count, std::size_t episode, const BonusConfig& c, const BonusContext& ctx) {
  const double k = static_cast<double>(episode);
  const double H = static_cast<double>(ctx.horizon);
  const double K = static_cast<double>(c.num_episodes);
  const double delta = c.delta / 8.0;
  const double beta = ctx.beta;
  const double sigma = ctx.sigma;
  const double growth = std::sqrt(1.0 + k / beta);

  const double log_r = std::log(covering_number(c.diameter, sigma * sigma / K, c.d1) * growth / delta);
  const double log_p = std::log(H * covering_number(c.diameter, sigma * sigma / (K * H), c.d1) * growth / delta);

  const double smooth = 1.0 + std::sqrt(log_plus(c.kernel_c1 * k / beta));
  const auto bias_slope = [&](double log_term, double lipschitz) {
    return c.kernel_c2 / (2.0 * std::pow(beta, 1.5)) * std::sqrt(2.0 * log_term) +
           4.0 * c.kernel_c2 / beta + 2.0 * lipschitz * ctx.lipschitz_q * smooth;
  };

  const double reward_part = std::sqrt(2.0 * log_r / count) + beta / count +
                             bias_slope(log_r, c.lipschitz_reward) * sigma;
  const double transition_part = std::sqrt(2.0 * H * H * log_p / count) + beta * H / count +
                                 bias_slope(log_p, c.lipschitz_transition) * sigma;
  return reward_part + transition_part;
}

}  // namespace

double bonus(double count, std::size_t episode, const BonusConfig& c, const BonusContext& ctx) {
  const double H = static_cast<double>(ctx.horizon);
  switch (c.mode) {
    case BonusConfig::Mode::experiment:
      return c.c_exp / std::sqrt(count) + ctx.beta * H / count;
    case BonusConfig::Mode::simple:
      return c.c1 * H / std::sqrt(count) + c.c2 * ctx.beta * H / count +
             c.c3 * ctx.lipschitz_q * ctx.sigma;
    case BonusConfig::Mode::theory:
      return theory_bonus(count, episode, c, ctx);
  }
  return 0.0;
}

}  // namespace kernrl
