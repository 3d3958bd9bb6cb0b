#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "kernrl/metric.hpp"

namespace kernrl {

/// One observed transition (x_h^s, a_h^s, x_{h+1}^s, r_h^s). Episodes and steps are 0-based.
struct TransitionRecord {
  std::size_t episode = 0;
  std::size_t step = 0;
  Point state;
  ActionId action = 0;
  Point next_state;
  double reward = 0.0;
};

/// Common driver-facing surface of the learners.
class Agent {
 public:
  virtual ~Agent() = default;

  /// Recompute the optimistic Q-function from data of episodes < k.
  virtual void plan(std::size_t episode) = 0;
  /// Greedy action at step h; ties go to the lowest action id.
  virtual ActionId act(std::size_t step, const Point& x) const = 0;
  virtual void observe(const TransitionRecord& record) = 0;

  /// Called by the driver when an agent declares supports_restart().
  virtual bool supports_restart() const { return false; }
  virtual void notify_change(std::size_t episode);

  /// Table-cell writes performed by model updates since construction (0 if not tracked).
  virtual std::uint64_t model_writes() const { return 0; }
};

}  // namespace kernrl
