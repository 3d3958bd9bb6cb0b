#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kernrl/metric.hpp"

namespace kernrl {

enum class Interpolation {
  lipschitz,         ///< min over anchors of Q~ + L1 * rho
  nearest_neighbor,  ///< Q~ of the closest anchor
};

/// Optimistic values Q~ at the anchor pairs of one step.
struct StepQ {
  std::vector<StateAction> pairs;
  std::vector<double> q;
};

/// Extension of anchor values to every pair. Anchors at infinite distance are ignored; with
/// no finite-distance anchor the result is `clip` (the optimistic default H - h).
double q_interpolate(const StepQ& anchors, const StateAction& query, Interpolation mode,
                     double lipschitz_q, double clip, const MetricSpec& metric);

/// Per-step interpolated Q-function with the clipped state values.
/// Step h (0-based) clips state values to H - h.
class QFunction {
 public:
  QFunction() = default;
  QFunction(std::size_t horizon, std::size_t num_actions, Interpolation mode, double lipschitz_q,
            MetricSpec metric);

  std::size_t horizon() const { return steps_.size(); }
  double clip(std::size_t step) const { return static_cast<double>(steps_.size() - step); }

  void set_step(std::size_t step, StepQ anchors);
  const StepQ& step(std::size_t step) const { return steps_[step]; }

  double value(std::size_t step, const StateAction& query) const;
  double value(std::size_t step, const Point& x, ActionId a) const;
  /// min(H - h, max_a value(h, (x, a))); 0 past the horizon.
  double state_value(std::size_t step, const Point& x) const;
  ActionId greedy(std::size_t step, const Point& x) const;

 private:
  std::size_t num_actions_ = 0;
  Interpolation mode_ = Interpolation::lipschitz;
  double lipschitz_q_ = 0.0;
  MetricSpec metric_;
  std::vector<StepQ> steps_;
  // under same_action_only only anchors with the queried action can be finite
  std::vector<std::vector<StepQ>> by_action_;
};

}  // namespace kernrl
