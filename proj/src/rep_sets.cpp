#include "kernrl/rep_sets.hpp"

#include <limits>

#include "kernrl/errors.hpp"

namespace kernrl {

RepSets::RepSets(double eps, double eps_next, MetricSpec metric)
    : eps_(eps), eps_next_(eps_next), metric_(metric) {
  if (eps < 0.0 || eps_next < 0.0) throw InvalidConfig("representative thresholds must be non-negative");
}

RepSets::Update RepSets::update(const StateAction& pair, const Point& next, std::size_t episode) {
  Update u;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const double d = distance(metric_, pair, pairs_[i]);
    if (d < best) {
      best = d;
      u.pair_index = i;
    }
  }
  if (pairs_.empty() || best > eps_) {
    u.pair_added = true;
    u.pair_index = pairs_.size();
    pairs_.push_back(pair);
    pair_episode_.push_back(episode);
  }

  best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < next_.size(); ++i) {
    const double d = state_distance(metric_, next, next_[i]);
    if (d < best) {
      best = d;
      u.next_index = i;
    }
  }
  if (next_.empty() || best > eps_next_) {
    u.next_added = true;
    u.next_index = next_.size();
    next_.push_back(next);
    next_episode_.push_back(episode);
  }
  return u;
}

std::size_t RepSets::project_pair(const StateAction& pair) const {
  if (pairs_.empty()) throw InvalidInput("projection onto an empty representative set");
  std::size_t best_i = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const double d = distance(metric_, pair, pairs_[i]);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  return best_i;
}

std::size_t RepSets::project_next(const Point& next) const {
  if (next_.empty()) throw InvalidInput("projection onto an empty next-state set");
  std::size_t best_i = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < next_.size(); ++i) {
    const double d = state_distance(metric_, next, next_[i]);
    if (d < best) {
      best = d;
      best_i = i;
    }
  }
  return best_i;
}

namespace {

void write_point(std::ostream& os, const Point& p) {
  if (p.is_discrete()) {
    os << p.id();
    return;
  }
  bool first = true;
  for (double c : p.coords()) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
}

}  // namespace

void RepSets::dump_csv(std::ostream& os, std::size_t step) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    os << step << ",pair,";
    write_point(os, pairs_[i].state);
    os << ',' << pairs_[i].action << ',' << pair_episode_[i] << '\n';
  }
  for (std::size_t i = 0; i < next_.size(); ++i) {
    os << step << ",next,";
    write_point(os, next_[i]);
    os << ",," << next_episode_[i] << '\n';
  }
}

}  // namespace kernrl
