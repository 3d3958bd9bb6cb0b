#pragma once

#include <cstddef>
#include <vector>

#include "kernrl/environment.hpp"
#include "kernrl/tabular_env.hpp"

namespace kernrl {

struct GridSpec {
  std::size_t resolution = 41;  ///< points per axis, >= 2
};

struct OptimalValueEstimate {
  std::size_t episode = 0;
  double value = 0.0;  ///< V*_1 at the grid point nearest to the initial state
  std::size_t resolution = 0;
  bool noise_ignored = true;  ///< planned on mean dynamics
};

/// Backward induction on env.sample_states(resolution), snapping mean successors to the
/// nearest grid point. Values at step h are clipped to [0, H - h].
/// Throws UnsupportedOperation for environments without mean dynamics.
OptimalValueEstimate grid_value_iteration(const Environment& env, std::size_t episode, const GridSpec& grid = {});

/// Same computation, returning V_h on the grid for every step (index H is all zeros).
std::vector<std::vector<double>> grid_values(const Environment& env, std::size_t episode,
                                             const std::vector<Point>& grid);

struct CoveringEstimate {
  std::size_t count = 0;
  std::vector<std::size_t> kept;  ///< indices into the input, in input order
};

/// Greedy eps-net of `points` under the given metric.
CoveringEstimate greedy_covering_estimate(const std::vector<Point>& points, double eps,
                                          const MetricSpec& metric = {});
CoveringEstimate greedy_covering_estimate(const std::vector<StateAction>& points, double eps,
                                          const MetricSpec& metric = {});

/// Exact V*_1 (index = state id) with the block active at `episode`.
std::vector<double> tabular_optimal_values(const TabularNSEnv& env, std::size_t episode);

}  // namespace kernrl
