#include "kernrl/rs_kerns_agent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kernrl/errors.hpp"

namespace kernrl {

RsKernsAgent::RsKernsAgent(RsParams params)
    : params_(std::move(params)),
      q_(params_.horizon, params_.num_actions, params_.interpolation, params_.lipschitz_q, params_.metric) {
  if (params_.horizon == 0 || params_.num_actions == 0) {
    throw InvalidConfig("horizon and action count must be positive");
  }
  validate(params_.kernel);
  validate(params_.bonus);
  params_.kernel.temporal.recursion_factor();  // rejects windowed kernels
  sets_.reserve(params_.horizon);
  models_.reserve(params_.horizon);
  for (std::size_t h = 0; h < params_.horizon; ++h) {
    sets_.emplace_back(params_.eps, params_.eps_next, params_.metric);
    models_.emplace_back(params_.kernel, params_.restart);
  }
  next_values_.resize(params_.horizon);
  cache_.resize(params_.horizon);
}

double RsKernsAgent::pair_distance(double sd, ActionId a, ActionId anchor) const {
  if (anchor == a) return sd;
  if (params_.metric.cross_rule == ActionCrossRule::same_action_only) return std::numeric_limits<double>::infinity();
  return sd + params_.metric.action_gap;
}

void RsKernsAgent::refresh_cache(std::size_t h) {
  auto& c = cache_[h];
  const auto& ys = sets_[h].next_states();
  const auto& ps = sets_[h + 1].pairs();
  const std::size_t A = params_.num_actions;
  const bool keep_dist = params_.interpolation == Interpolation::lipschitz;
  constexpr auto npos = static_cast<std::size_t>(-1);

  auto scan = [&](std::size_t y, std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p) {
      const double sd = state_distance(params_.metric, ys[y], ps[p].state);
      if (keep_dist) c.state_dist[y].push_back(sd);
      for (ActionId a = 0; a < A; ++a) {
        const double d = pair_distance(sd, a, ps[p].action);
        if (d < c.nearest_dist[y * A + a]) {
          c.nearest_dist[y * A + a] = d;
          c.nearest[y * A + a] = p;
        }
      }
    }
  };
  for (std::size_t y = 0; y < c.rows; ++y) scan(y, c.cols, ps.size());
  c.nearest.resize(ys.size() * A, npos);
  c.nearest_dist.resize(ys.size() * A, std::numeric_limits<double>::infinity());
  if (keep_dist) c.state_dist.resize(ys.size());
  for (std::size_t y = c.rows; y < ys.size(); ++y) scan(y, 0, ps.size());
  c.rows = ys.size();
  c.cols = ps.size();
}

// Same result as QFunction::state_value(h + 1, y) for the plan being built.
double RsKernsAgent::cached_next_value(std::size_t h, std::size_t y, const StepQ& next_q, double clip) const {
  const auto& c = cache_[h];
  const auto& ps = sets_[h + 1].pairs();
  const std::size_t A = params_.num_actions;
  constexpr double inf = std::numeric_limits<double>::infinity();
  double best = -inf;
  for (ActionId a = 0; a < A; ++a) {
    double v;
    if (params_.interpolation == Interpolation::nearest_neighbor) {
      const std::size_t p = c.nearest[y * A + a];
      v = p == static_cast<std::size_t>(-1) ? clip : next_q.q[p];
    } else {
      v = inf;
      const auto& row = c.state_dist[y];
      for (std::size_t p = 0; p < row.size(); ++p) {
        const double d = pair_distance(row[p], a, ps[p].action);
        if (std::isinf(d)) continue;
        v = std::min(v, next_q.q[p] + params_.lipschitz_q * d);
      }
      if (std::isinf(v)) v = clip;
    }
    best = std::max(best, v);
  }
  return std::min(clip, best);
}

void RsKernsAgent::plan(std::size_t k) {
  const std::size_t H = params_.horizon;
  const BonusContext ctx{H, params_.kernel.beta, params_.kernel.spatial.sigma, params_.lipschitz_q};
  QFunction q(H, params_.num_actions, params_.interpolation, params_.lipschitz_q, params_.metric);

  for (std::size_t h = H; h-- > 0;) {
    const auto& sets = sets_[h];
    const auto& model = models_[h];

    auto& values = next_values_[h];
    values.assign(sets.next_states().size(), 0.0);
    if (h + 1 < H) {
      refresh_cache(h);
      for (std::size_t y = 0; y < values.size(); ++y) values[y] = cached_next_value(h, y, q.step(h + 1), q.clip(h + 1));
    }

    StepQ anchors;
    anchors.pairs = sets.pairs();
    anchors.q.resize(model.num_pairs());
    for (std::size_t p = 0; p < model.num_pairs(); ++p) {
      const auto& row = model.transition_row(p);
      double expected = 0.0;
      for (std::size_t y = 0; y < row.size(); ++y) expected += row[y] * values[y];
      anchors.q[p] = model.reward(p) + expected +
                     bonus(params_.kernel.beta + model.reward_weight(p), k, params_.bonus, ctx);
    }
    q.set_step(h, std::move(anchors));
  }
  q_ = std::move(q);
}

ActionId RsKernsAgent::act(std::size_t step, const Point& x) const { return q_.greedy(step, x); }

void RsKernsAgent::observe(const TransitionRecord& record) {
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

  auto& sets = sets_[record.step];
  const auto u = sets.update({record.state, record.action}, record.next_state, record.episode);
  models_[record.step].update(sets, u, record.reward, record.episode);
}

void RsKernsAgent::notify_change(std::size_t) {
  if (!params_.restart) throw InvalidConfig("agent was not built with restart support");
  for (auto& m : models_) m.reset_rewards();
}

std::uint64_t RsKernsAgent::model_writes() const {
  std::uint64_t total = 0;
  for (const auto& m : models_) total += m.writes();
  return total;
}

void RsKernsAgent::dump_representatives(std::ostream& os) const {
  os << "h,kind,coords...,action,inserted_episode\n";
  for (std::size_t h = 0; h < sets_.size(); ++h) sets_[h].dump_csv(os, h);
}

RsKernsAgent make_rs_kernel_ucbvi(RsParams params) {
  params.kernel.temporal = TemporalKernel::constant();
  return RsKernsAgent(std::move(params));
}

RsKernsAgent make_restart_baseline(RsParams params) {
  params.kernel.temporal = TemporalKernel::constant();
  params.restart = true;
  return RsKernsAgent(std::move(params));
}

}  // namespace kernrl
