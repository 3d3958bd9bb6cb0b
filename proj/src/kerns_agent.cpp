#include "kernrl/kerns_agent.hpp"

#include <cmath>
#include <string>

#include "kernrl/errors.hpp"

namespace kernrl {

double default_lipschitz_q(std::size_t horizon, double lipschitz_reward, double lipschitz_transition) {
  double total = 0.0;
  for (std::size_t h = 1; h <= horizon; ++h) {
    total += lipschitz_reward * std::pow(lipschitz_transition, static_cast<double>(horizon - h));
  }
  return total;
}

namespace {

std::size_t visible_prefix(std::span<const TransitionRecord> history, std::size_t k) {
  std::size_t n = 0;
  while (n < history.size() && history[n].episode < k) ++n;
  return n;
}

}  // namespace

WeightedCount weights_and_count(std::span<const TransitionRecord> history, const StateAction& query,
                                std::size_t k, const KernelSpec& kernel, const MetricSpec& metric) {
  WeightedCount out;
  const std::size_t n = visible_prefix(history, k);
  out.weights.reserve(n);
  double sum = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const auto& rec = history[s];
    const double w = kernel_weight(kernel, k - rec.episode - 1,
                                   distance(metric, query, {rec.state, rec.action}));
    out.weights.push_back(w);
    sum += w;
  }
  out.count = kernel.beta + sum;
  return out;
}

double estimate_reward(std::span<const TransitionRecord> history, const StateAction& query,
                       std::size_t k, const KernelSpec& kernel, const MetricSpec& metric) {
  const auto wc = weights_and_count(history, query, k, kernel, metric);
  double acc = 0.0;
  for (std::size_t s = 0; s < wc.weights.size(); ++s) acc += wc.weights[s] * history[s].reward;
  return acc / wc.count;
}

double apply_transition_estimate(std::span<const TransitionRecord> history, const StateAction& query,
                                 std::size_t k, const std::function<double(const Point&)>& value,
                                 const KernelSpec& kernel, const MetricSpec& metric) {
  const auto wc = weights_and_count(history, query, k, kernel, metric);
  double acc = 0.0;
  for (std::size_t s = 0; s < wc.weights.size(); ++s) {
    if (wc.weights[s] != 0.0) acc += wc.weights[s] * value(history[s].next_state);
  }
  return wc.count > 0.0 ? acc / wc.count : 0.0;
}

KernsAgent::KernsAgent(KernsParams params)
    : params_(std::move(params)),
      history_(params_.horizon),
      q_(params_.horizon, params_.num_actions, params_.interpolation, params_.lipschitz_q, params_.metric) {
  if (params_.horizon == 0 || params_.num_actions == 0) {
    throw InvalidConfig("horizon and action count must be positive");
  }
  validate(params_.kernel);
  validate(params_.bonus);
}

void KernsAgent::plan(std::size_t k) {
  const std::size_t H = params_.horizon;
  const BonusContext ctx{H, params_.kernel.beta, params_.kernel.spatial.sigma, params_.lipschitz_q};
  QFunction q(H, params_.num_actions, params_.interpolation, params_.lipschitz_q, params_.metric);

  for (std::size_t h = H; h-- > 0;) {
    const auto& hist = history_[h];
    const std::size_t n = visible_prefix(hist, k);

    // target r + V_{h+1}(x') of every visible record
    std::vector<double> target(n);
    for (std::size_t s = 0; s < n; ++s) {
      target[s] = hist[s].reward + q.state_value(h + 1, hist[s].next_state);
    }

    std::vector<StateAction> pairs(n);
    std::vector<double> temporal(n);
    for (std::size_t s = 0; s < n; ++s) {
      pairs[s] = {hist[s].state, hist[s].action};
      temporal[s] = temporal_weight(params_.kernel.temporal, k - hist[s].episode - 1);
    }

    StepQ anchors;
    anchors.pairs.reserve(n);
    anchors.q.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
      const StateAction& pair = pairs[m];
      double count = params_.kernel.beta;
      double acc = 0.0;
      for (std::size_t s = 0; s < n; ++s) {
        if (temporal[s] == 0.0) continue;
        // same product as kernel_weight()
        const double w = temporal[s] * spatial_weight(params_.kernel.spatial,
                                                      distance(params_.metric, pair, pairs[s]));
        count += w;
        acc += w * target[s];
      }
      anchors.pairs.push_back(pair);
      anchors.q.push_back(acc / count + bonus(count, k, params_.bonus, ctx));
    }
    q.set_step(h, std::move(anchors));
  }
  q_ = std::move(q);
}

ActionId KernsAgent::act(std::size_t step, const Point& x) const { return q_.greedy(step, x); }

void KernsAgent::observe(const TransitionRecord& record) {
  if (record.step >= params_.horizon) throw InvalidInput("record step beyond the horizon");
  if (record.action >= params_.num_actions) throw InvalidInput("record action out of range");
  if (!(record.reward >= 0.0 && record.reward <= 1.0)) throw InvalidInput("reward outside [0, 1]");
  if (has_last_ && (record.episode < last_episode_ ||
                    (record.episode == last_episode_ && record.step <= last_step_))) {
    throw InvalidInput("out-of-order record (episode " + std::to_string(record.episode) + ", step " +
                       std::to_string(record.step) + ")");
  }
  has_last_ = true;
  last_episode_ = record.episode;
  last_step_ = record.step;
  history_[record.step].push_back(record);
}

}  // namespace kernrl
