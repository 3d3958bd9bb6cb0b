#include "kernrl/oracle.hpp"

#include <algorithm>
#include <limits>

#include "kernrl/errors.hpp"
#include "kernrl/rep_sets.hpp"

namespace kernrl {

namespace {

std::size_t nearest(const std::vector<Point>& grid, const Point& x, const MetricSpec& metric) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = state_distance(metric, grid[i], x);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::vector<std::vector<double>> grid_values(const Environment& env, std::size_t k, const std::vector<Point>& grid) {
  if (grid.empty()) throw InvalidInput("empty grid");
  const std::size_t H = env.horizon();
  const std::size_t A = env.num_actions();
  const MetricSpec metric = env.metric();

  std::vector<std::vector<double>> V(H + 1, std::vector<double>(grid.size(), 0.0));
  for (std::size_t h = H; h-- > 0;) {
    const double clip = static_cast<double>(H - h);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double best = 0.0;
      for (ActionId a = 0; a < A; ++a) {
        const Point next = env.mean_next_state(k, h, grid[i], a);
        const double q = env.true_mean_reward(k, h, grid[i], a) + V[h + 1][nearest(grid, next, metric)];
        best = std::max(best, q);
      }
      V[h][i] = std::clamp(best, 0.0, clip);
    }
  }
  return V;
}

OptimalValueEstimate grid_value_iteration(const Environment& env, std::size_t k, const GridSpec& spec) {
  if (spec.resolution < 2) throw InvalidConfig("grid resolution must be at least 2");
  // probe before the expensive part so unsupported envs fail fast
  auto probe = env.clone();
  const Point x1 = probe->reset(k);
  env.mean_next_state(k, 0, x1, 0);

  const auto grid = env.sample_states(spec.resolution);
  const auto V = grid_values(env, k, grid);
  OptimalValueEstimate out;
  out.episode = k;
  out.value = V[0][nearest(grid, x1, env.metric())];
  out.resolution = spec.resolution;
  out.noise_ignored = true;
  return out;
}

CoveringEstimate greedy_covering_estimate(const std::vector<Point>& points, double eps, const MetricSpec& metric) {
  if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
  CoveringEstimate out;
  out.kept = greedy_cover_indices(points, eps,
                                  [&](const Point& a, const Point& b) { return state_distance(metric, a, b); });
  out.count = out.kept.size();
  return out;
}

CoveringEstimate greedy_covering_estimate(const std::vector<StateAction>& points, double eps,
                                          const MetricSpec& metric) {
  if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
  CoveringEstimate out;
  out.kept = greedy_cover_indices(points, eps,
                                  [&](const StateAction& a, const StateAction& b) { return distance(metric, a, b); });
  out.count = out.kept.size();
  return out;
}

std::vector<double> tabular_optimal_values(const TabularNSEnv& env, std::size_t k) {
  const auto& block = env.block_at(k);
  const std::size_t H = env.horizon();
  const std::size_t X = env.num_states();
  const std::size_t A = env.num_actions();

  std::vector<double> next(X, 0.0), cur(X, 0.0);
  for (std::size_t h = H; h-- > 0;) {
    for (std::size_t x = 0; x < X; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < A; ++a) {
        double q = block.rewards[h][x][a];
        const auto& row = block.transitions[h][x][a];
        for (std::size_t y = 0; y < X; ++y) q += row[y] * next[y];
        best = std::max(best, q);
      }
      cur[x] = best;
    }
    std::swap(cur, next);
  }
  return next;
}

}  // namespace kernrl
