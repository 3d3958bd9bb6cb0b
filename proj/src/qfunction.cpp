#include "kernrl/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernrl/errors.hpp"

namespace kernrl {

namespace {

double interpolate(const StepQ& anchors, const Point& x, ActionId a, Interpolation mode, double lipschitz_q,
                   double clip, const MetricSpec& metric) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const bool split = metric.cross_rule == ActionCrossRule::same_action_only;
  auto dist = [&](const StateAction& p) {
    if (p.action != a && split) return inf;
    const double dx = state_distance(metric, x, p.state);
    return p.action == a ? dx : dx + metric.action_gap;
  };
  if (mode == Interpolation::nearest_neighbor) {
    double best_dist = inf;
    double best_q = clip;
    for (std::size_t i = 0; i < anchors.pairs.size(); ++i) {
      const double d = dist(anchors.pairs[i]);
      if (d < best_dist) {
        best_dist = d;
        best_q = anchors.q[i];
      }
    }
    return best_q;
  }
  double best = inf;
  for (std::size_t i = 0; i < anchors.pairs.size(); ++i) {
    const double d = dist(anchors.pairs[i]);
    if (std::isinf(d)) continue;
    best = std::min(best, anchors.q[i] + lipschitz_q * d);
  }
  return std::isinf(best) ? clip : best;
}

}  // namespace

double q_interpolate(const StepQ& anchors, const StateAction& query, Interpolation mode,
                     double lipschitz_q, double clip, const MetricSpec& metric) {
  return interpolate(anchors, query.state, query.action, mode, lipschitz_q, clip, metric);
}

QFunction::QFunction(std::size_t horizon, std::size_t num_actions, Interpolation mode,
                     double lipschitz_q, MetricSpec metric)
    : num_actions_(num_actions),
      mode_(mode),
      lipschitz_q_(lipschitz_q),
      metric_(metric),
      steps_(horizon),
      by_action_(horizon) {
  if (lipschitz_q < 0.0) throw InvalidConfig("Lipschitz constant must be non-negative");
}

void QFunction::set_step(std::size_t step, StepQ anchors) {
  if (anchors.pairs.size() != anchors.q.size()) throw InvalidInput("anchor/value size mismatch");
  if (metric_.cross_rule == ActionCrossRule::same_action_only) {
    std::vector<StepQ> split(num_actions_);
    for (std::size_t i = 0; i < anchors.pairs.size(); ++i) {
      const auto a = anchors.pairs[i].action;
      if (a >= num_actions_) throw InvalidInput("anchor action out of range");
      split[a].pairs.push_back(anchors.pairs[i]);
      split[a].q.push_back(anchors.q[i]);
    }
    by_action_[step] = std::move(split);
  }
  steps_[step] = std::move(anchors);
}

double QFunction::value(std::size_t step, const StateAction& query) const {
  return value(step, query.state, query.action);
}

double QFunction::value(std::size_t step, const Point& x, ActionId a) const {
  const StepQ& anchors =
      (metric_.cross_rule == ActionCrossRule::same_action_only && a < by_action_[step].size())
          ? by_action_[step][a]
          : steps_[step];
  return interpolate(anchors, x, a, mode_, lipschitz_q_, clip(step), metric_);
}

double QFunction::state_value(std::size_t step, const Point& x) const {
  if (step >= steps_.size()) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < num_actions_; ++a) best = std::max(best, value(step, x, a));
  return std::min(clip(step), best);
}

ActionId QFunction::greedy(std::size_t step, const Point& x) const {
  ActionId best_a = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < num_actions_; ++a) {
    const double v = value(step, x, a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  return best_a;
}

}  // namespace kernrl
