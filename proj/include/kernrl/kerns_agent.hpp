#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kernrl/agent.hpp"
#include "kernrl/bonus.hpp"
#include "kernrl/kernels.hpp"
#include "kernrl/qfunction.hpp"

namespace kernrl {

struct KernsParams {
  std::size_t horizon = 15;
  std::size_t num_actions = 4;
  double lipschitz_q = 1.0;
  KernelSpec kernel;
  BonusConfig bonus;
  MetricSpec metric;
  Interpolation interpolation = Interpolation::lipschitz;
};

/// sum_{h'=h}^{H} L_r L_p^{H-h'} evaluated at the first step.
double default_lipschitz_q(std::size_t horizon, double lipschitz_reward, double lipschitz_transition);

// Kernel estimators over the records of one step. Only records with episode < k are used;
// history must be sorted by episode.

struct WeightedCount {
  std::vector<double> weights;  ///< one per record with episode < k, in history order
  double count = 0.0;           ///< beta + sum of weights
};

WeightedCount weights_and_count(std::span<const TransitionRecord> history, const StateAction& query,
                                std::size_t k, const KernelSpec& kernel, const MetricSpec& metric);

double estimate_reward(std::span<const TransitionRecord> history, const StateAction& query,
                       std::size_t k, const KernelSpec& kernel, const MetricSpec& metric);

/// sum_s w~_s V(x'_s): the sub-probability transition estimate applied to V.
double apply_transition_estimate(std::span<const TransitionRecord> history, const StateAction& query,
                                 std::size_t k, const std::function<double(const Point&)>& value,
                                 const KernelSpec& kernel, const MetricSpec& metric);

/// Kernel-based learner for non-stationary MDPs keeping the full history.
/// Planning recomputes every estimate from scratch (quadratic in the number of episodes).
class KernsAgent final : public Agent {
 public:
  explicit KernsAgent(KernsParams params);

  void plan(std::size_t episode) override;
  ActionId act(std::size_t step, const Point& x) const override;
  void observe(const TransitionRecord& record) override;

  const KernsParams& params() const { return params_; }
  const QFunction& q() const { return q_; }
  std::span<const TransitionRecord> history(std::size_t step) const { return history_[step]; }

 private:
  KernsParams params_;
  std::vector<std::vector<TransitionRecord>> history_;
  QFunction q_;
  bool has_last_ = false;
  std::size_t last_episode_ = 0;
  std::size_t last_step_ = 0;
};

}  // namespace kernrl
