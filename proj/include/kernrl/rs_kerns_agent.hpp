#pragma once

#include <ostream>
#include <vector>

#include "kernrl/agent.hpp"
#include "kernrl/bonus.hpp"
#include "kernrl/kernels.hpp"
#include "kernrl/qfunction.hpp"
#include "kernrl/rep_sets.hpp"
#include "kernrl/rs_model.hpp"

namespace kernrl {

struct RsParams {
  std::size_t horizon = 15;
  std::size_t num_actions = 4;
  double eps = 0.1;
  double eps_next = 0.1;
  double lipschitz_q = 1.0;
  KernelSpec kernel;  ///< temporal part must be exp_discount or constant
  BonusConfig bonus;
  MetricSpec metric;
  Interpolation interpolation = Interpolation::nearest_neighbor;
  bool restart = false;
};

/// Kernel learner on representative states: constant work per episode once the
/// representative sets stop growing.
class RsKernsAgent final : public Agent {
 public:
  explicit RsKernsAgent(RsParams params);

  void plan(std::size_t episode) override;
  ActionId act(std::size_t step, const Point& x) const override;
  void observe(const TransitionRecord& record) override;

  bool supports_restart() const override { return params_.restart; }
  /// Clears the reward estimator and the counts driving the bonus; transitions persist.
  void notify_change(std::size_t episode) override;

  std::uint64_t model_writes() const override;

  const RsParams& params() const { return params_; }
  const QFunction& q() const { return q_; }
  const RepSets& rep_sets(std::size_t step) const { return sets_[step]; }
  const RepresentativeModel& model(std::size_t step) const { return models_[step]; }
  /// Values V_{h+1} at the representative next states of step h from the last plan().
  const std::vector<double>& next_values(std::size_t step) const { return next_values_[step]; }

  /// Representative sets as CSV (header included).
  void dump_representatives(std::ostream& os) const;

 private:
  // distances from the next-state representatives of step h to the pairs of step h + 1,
  // extended as the sets grow so planning never rescans old combinations
  struct NextValueCache {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> nearest;  // rows x actions, npos when no finite anchor
    std::vector<double> nearest_dist;
    std::vector<std::vector<double>> state_dist;  // lipschitz interpolation only
  };
  void refresh_cache(std::size_t step);
  double cached_next_value(std::size_t step, std::size_t y, const StepQ& next_q, double clip) const;
  double pair_distance(double state_dist, ActionId a, ActionId anchor_action) const;

  RsParams params_;
  std::vector<NextValueCache> cache_;
  std::vector<RepSets> sets_;
  std::vector<RepresentativeModel> models_;
  std::vector<std::vector<double>> next_values_;
  QFunction q_;
  bool has_last_ = false;
  std::size_t last_episode_ = 0;
  std::size_t last_step_ = 0;
};

/// Stationary baseline: the same learner with chi(t) = 1.
RsKernsAgent make_rs_kernel_ucbvi(RsParams params);

/// Stationary baseline that restarts its reward estimates and bonuses at known change episodes.
RsKernsAgent make_restart_baseline(RsParams params);

}  // namespace kernrl
