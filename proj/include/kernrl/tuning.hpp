#pragma once

#include <cstddef>
#include <string>

namespace kernrl {

enum class BoundFamily { r1, r2 };

struct TunedParams {
  double sigma = 0.0;
  double eta = 0.0;
  std::size_t window = 0;
  BoundFamily bound = BoundFamily::r1;
};

/// W = ceil(log(K / (1 - eta)) / log(1 / eta)).
std::size_t window_from_eta(std::size_t num_episodes, double eta);

/// Closed-form kernel parameters minimizing the regret bounds. d1, d2 are the covering
/// dimensions of the state and action spaces; horizon only enters R2 with d1 + d2 > 0.
/// delta = 0 falls back to eta = 1 - 1/K. Throws InvalidConfig("variation exceeds horizon budget")
/// when delta is too large for the bound to be sublinear.
TunedParams tune_parameters(std::size_t num_episodes, double delta, double d1, double d2, BoundFamily bound,
                            std::size_t horizon = 1);

BoundFamily parse_bound(const std::string& name);

}  // namespace kernrl
