#include "kernrl/rs_model.hpp"

#include <cmath>

#include "kernrl/errors.hpp"

namespace kernrl {

RepresentativeModel::RepresentativeModel(KernelSpec kernel, bool restart_support)
    : kernel_(kernel), eta_(kernel.temporal.recursion_factor()), restart_(restart_support) {
  validate(kernel_);
}

double RepresentativeModel::reward_weight(std::size_t pair) const {
  return restart_ ? reward_weight_[pair] : weight_[pair];
}

double RepresentativeModel::transition(std::size_t pair, std::size_t next) const {
  const auto& row = transition_[pair];
  return next < row.size() ? row[next] : 0.0;
}

double RepresentativeModel::decay_to(std::size_t pair, std::size_t episode) const {
  if (eta_ == 1.0) return 1.0;
  return std::pow(eta_, static_cast<double>(episode - aux_episode_[pair]));
}

double RepresentativeModel::aux_count(std::size_t pair) const {
  return aux_count_[pair] * decay_to(pair, last_episode_);
}

double RepresentativeModel::aux_reward_sum(std::size_t pair) const {
  return aux_reward_sum_[pair] * decay_to(pair, last_episode_);
}

double RepresentativeModel::aux_transition_count(std::size_t pair, std::size_t next) const {
  const auto& row = aux_transition_[pair];
  return next < row.size() ? row[next] * decay_to(pair, last_episode_) : 0.0;
}

void RepresentativeModel::touch_aux(std::size_t pair, std::size_t next, double reward,
                                    std::size_t episode) {
  const double f = decay_to(pair, episode);
  aux_count_[pair] = 1.0 + f * aux_count_[pair];
  aux_reward_sum_[pair] = reward + f * aux_reward_sum_[pair];
  if (restart_) aux_reward_count_[pair] = 1.0 + f * aux_reward_count_[pair];
  auto& row = aux_transition_[pair];
  row.resize(num_next_, 0.0);
  if (f != 1.0) {
    for (double& v : row) v *= f;
  }
  row[next] += 1.0;
  aux_episode_[pair] = episode;
}

// Batch form of the estimates for a freshly inserted pair, summing kernel-weighted
// auxiliary counts over all representatives (all aux values brought to last_episode_).
void RepresentativeModel::initialize_pair(const RepSets& sets, std::size_t pair) {
  const auto& pairs = sets.pairs();
  const MetricSpec& metric = sets.metric();
  double w = 0.0, wr = 0.0, rsum = 0.0;
  std::vector<double> row(num_next_, 0.0);
  for (std::size_t p = 0; p < weight_.size(); ++p) {
    const double phi = spatial_weight(kernel_.spatial, distance(metric, pairs[pair], pairs[p]));
    if (phi == 0.0) continue;
    const double f = decay_to(p, last_episode_);
    w += phi * aux_count_[p] * f;
    if (restart_) wr += phi * aux_reward_count_[p] * f;
    rsum += phi * aux_reward_sum_[p] * f;
    const auto& aux = aux_transition_[p];
    for (std::size_t y = 0; y < aux.size(); ++y) row[y] += phi * aux[y] * f;
  }
  const double denom = kernel_.beta + w;
  for (double& v : row) v /= denom;
  weight_[pair] = w;
  reward_[pair] = rsum / (kernel_.beta + (restart_ ? wr : w));
  if (restart_) reward_weight_[pair] = wr;
  transition_[pair] = std::move(row);
}

void RepresentativeModel::update(const RepSets& sets, const RepSets::Update& u, double reward,
                                 std::size_t episode) {
  if (has_last_ && episode < last_episode_) throw InvalidInput("model updates must follow episode order");
  if (sets.pairs().size() != weight_.size() + (u.pair_added ? 1 : 0) ||
      sets.next_states().size() != num_next_ + (u.next_added ? 1 : 0)) {
    throw InvalidInput("representative sets and model are out of sync");
  }
  const double gamma =
      (!has_last_ || eta_ == 1.0) ? 1.0 : std::pow(eta_, static_cast<double>(episode - last_episode_));
  has_last_ = true;
  last_episode_ = episode;

  const std::size_t existing = weight_.size();
  if (u.pair_added) {
    weight_.push_back(0.0);
    reward_.push_back(0.0);
    transition_.emplace_back();
    if (restart_) {
      reward_weight_.push_back(0.0);
      aux_reward_count_.push_back(0.0);
    }
    aux_episode_.push_back(episode);
    aux_count_.push_back(0.0);
    aux_reward_sum_.push_back(0.0);
    aux_transition_.emplace_back();
  }
  if (u.next_added) ++num_next_;

  const std::size_t mapped = u.pair_index;
  const std::size_t target = u.next_index;
  touch_aux(mapped, target, reward, episode);

  const auto& pairs = sets.pairs();
  const MetricSpec& metric = sets.metric();
  const double beta = kernel_.beta;
  std::uint64_t writes = 0;

  // pairs that existed before this transition: exact one-step recursions
  for (std::size_t p = 0; p < existing; ++p) {
    const double phi = spatial_weight(kernel_.spatial, distance(metric, pairs[p], pairs[mapped]));
    const double w_old = weight_[p];
    const double w_new = phi + gamma * w_old;
    const double scale = gamma * (beta + w_old) / (beta + w_new);
    weight_[p] = w_new;

    if (restart_) {
      const double wr_old = reward_weight_[p];
      const double wr_new = phi + gamma * wr_old;
      reward_weight_[p] = wr_new;
      reward_[p] = phi * reward / (beta + wr_new) + gamma * (beta + wr_old) / (beta + wr_new) * reward_[p];
      ++writes;
    } else {
      reward_[p] = phi * reward / (beta + w_new) + scale * reward_[p];
    }

    auto& row = transition_[p];
    row.resize(num_next_, 0.0);
    for (double& v : row) v *= scale;
    row[target] += phi / (beta + w_new);
    writes += 2 + row.size();
  }

  if (u.pair_added) {
    initialize_pair(sets, mapped);
    writes += 2 + num_next_ + (restart_ ? 1 : 0);
  }

  last_update_writes_ = writes;
  writes_ += writes;
}

void RepresentativeModel::reset_rewards() {
  if (!restart_) throw InvalidConfig("model was not built with restart support");
  for (std::size_t p = 0; p < weight_.size(); ++p) {
    reward_weight_[p] = 0.0;
    reward_[p] = 0.0;
    aux_reward_count_[p] = 0.0;
    aux_reward_sum_[p] = 0.0;
  }
}

}  // namespace kernrl
