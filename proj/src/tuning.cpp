#include "kernrl/tuning.hpp"

#include <cmath>

#include "kernrl/errors.hpp"

namespace kernrl {

std::size_t window_from_eta(std::size_t K, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidConfig("eta must lie in (0, 1)");
  if (K == 0) throw InvalidConfig("K must be positive");
  const double w = std::ceil(std::log(static_cast<double>(K) / (1.0 - eta)) / std::log(1.0 / eta));
  return static_cast<std::size_t>(std::max(w, 1.0));
}

TunedParams tune_parameters(std::size_t num_episodes, double delta, double d1, double d2, BoundFamily bound,
                            std::size_t horizon) {
  if (num_episodes < 2) throw InvalidConfig("K must be at least 2");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidConfig("delta must be finite and non-negative");
  if (!(d1 >= 0.0 && d2 >= 0.0)) throw InvalidConfig("dimensions must be non-negative");
  if (horizon == 0) throw InvalidConfig("horizon must be positive");

  const double K = static_cast<double>(num_episodes);
  const double d = d1 + d2;
  const double H = static_cast<double>(horizon);
  TunedParams out;
  out.bound = bound;

  double limit = 0.0;  // delta must stay below this for sublinear regret
  double log_inv_eta = 0.0;
  if (d == 0.0) {
    out.sigma = 0.0;
    limit = K;
    log_inv_eta = std::pow(delta / K, 2.0 / 3.0);
  } else if (bound == BoundFamily::r1) {
    const double alpha = 1.0 / (d + 3.0);
    out.sigma = std::pow(K, -alpha);
    limit = std::pow(K, 3.0 / (d + 3.0));
    log_inv_eta = std::pow(delta / std::pow(K, 1.0 + alpha * d / 2.0), 2.0 / 3.0);
  } else {
    const double alpha = 1.0 / (d + 2.0);
    out.sigma = std::pow(K, -alpha);
    limit = std::pow(K, 2.0 / (d + 2.0));
    // 1/H outside the square root, as in the optimized table
    log_inv_eta = std::sqrt(delta / std::pow(K, 1.0 + alpha * d)) / H;
  }
  if (delta >= limit) throw InvalidConfig("variation exceeds horizon budget");

  out.eta = std::exp(-log_inv_eta);
  // delta = 0 (or small enough to round eta to 1) is the stationary case
  if (!(out.eta < 1.0)) out.eta = 1.0 - 1.0 / K;
  if (!(out.eta > 0.0)) throw InvalidConfig("variation exceeds horizon budget");
  out.window = window_from_eta(num_episodes, out.eta);
  return out;
}

BoundFamily parse_bound(const std::string& name) {
  if (name == "r1" || name == "R1") return BoundFamily::r1;
  if (name == "r2" || name == "R2") return BoundFamily::r2;
  throw InvalidConfig("unknown bound family '" + name + "' (expected r1 or r2)");
}

}  // namespace kernrl
