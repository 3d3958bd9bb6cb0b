#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kernrl/kernels.hpp"
#include "kernrl/rep_sets.hpp"

namespace kernrl {

/// Compressed empirical MDP of one step, indexed by the representatives of a RepSets.
///
/// For every representative pair p it holds the generalized count W(p), the reward
/// estimate R(p) and the sub-probability row P(.|p) over representative next states.
/// Tables are maintained by exact recursions for chi(t) = eta^t (eta = 1 for the constant
/// kernel): existing rows are rescaled and receive the new sample's kernel weight, and a row
/// created for a new representative is initialized from discounted per-representative counts.
///
/// With restart support the reward estimate and the count used by the bonus come from a
/// second set of counts that reset_rewards() clears; transition rows keep their history.
class RepresentativeModel {
 public:
  RepresentativeModel(KernelSpec kernel, bool restart_support);

  /// Apply one transition already inserted into `sets` (update == the value returned by sets.update()).
  void update(const RepSets& sets, const RepSets::Update& update, double reward, std::size_t episode);

  void reset_rewards();

  std::size_t num_pairs() const { return weight_.size(); }
  std::size_t num_next() const { return num_next_; }

  double weight(std::size_t pair) const { return weight_[pair]; }
  /// Count entering the reward estimate and the bonus (== weight() without restart support).
  double reward_weight(std::size_t pair) const;
  double reward(std::size_t pair) const { return reward_[pair]; }
  double transition(std::size_t pair, std::size_t next) const;
  const std::vector<double>& transition_row(std::size_t pair) const { return transition_[pair]; }

  // discounted per-representative counts as of the last update
  double aux_count(std::size_t pair) const;
  double aux_reward_sum(std::size_t pair) const;
  double aux_transition_count(std::size_t pair, std::size_t next) const;

  bool restart_support() const { return restart_; }
  std::uint64_t writes() const { return writes_; }
  std::uint64_t last_update_writes() const { return last_update_writes_; }

 private:
  double decay_to(std::size_t pair, std::size_t episode) const;
  void touch_aux(std::size_t pair, std::size_t next, double reward, std::size_t episode);
  void initialize_pair(const RepSets& sets, std::size_t pair);

  KernelSpec kernel_;
  double eta_;
  bool restart_;
  std::size_t num_next_ = 0;
  bool has_last_ = false;
  std::size_t last_episode_ = 0;

  std::vector<double> weight_;
  std::vector<double> reward_weight_;  // restart only
  std::vector<double> reward_;
  std::vector<std::vector<double>> transition_;

  // auxiliary counts, stored as of aux_episode_[p]; actual value decays by eta per episode since
  std::vector<std::size_t> aux_episode_;
  std::vector<double> aux_count_;
  std::vector<double> aux_reward_count_;  // restart only
  std::vector<double> aux_reward_sum_;
  std::vector<std::vector<double>> aux_transition_;

  std::uint64_t writes_ = 0;
  std::uint64_t last_update_writes_ = 0;
};

}  // namespace kernrl
