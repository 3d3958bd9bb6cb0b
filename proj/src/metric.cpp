#include "kernrl/metric.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kernrl/errors.hpp"

namespace kernrl {

std::span<const double> Point::coords() const {
  if (const auto* c = std::get_if<std::vector<double>>(&value_)) return *c;
  throw InvalidInput("point is discrete and has no coordinates");
}

std::size_t Point::id() const {
  if (const auto* i = std::get_if<std::size_t>(&value_)) return *i;
  throw InvalidInput("point is continuous and has no discrete id");
}

double state_distance(const MetricSpec& spec, const Point& x, const Point& y) {
  if (x.is_discrete() != y.is_discrete()) {
    throw InvalidInput("cannot compare a discrete point with a continuous one");
  }
  if (x.is_discrete()) return x.id() == y.id() ? 0.0 : 1.0;

  const auto a = x.coords();
  const auto b = y.coords();
  if (a.size() != b.size()) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                       std::to_string(b.size()));
  }
  if (spec.state_metric == StateMetric::discrete) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return 1.0;
    return 0.0;
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double distance(const MetricSpec& spec, const StateAction& u, const StateAction& v) {
  if (u.action != v.action && spec.cross_rule == ActionCrossRule::same_action_only) {
    return std::numeric_limits<double>::infinity();
  }
  const double dx = state_distance(spec, u.state, v.state);
  if (u.action == v.action) return dx;
  if (spec.cross_rule == ActionCrossRule::same_action_only) {
    return std::numeric_limits<double>::infinity();
  }
  return dx + spec.action_gap;
}

}  // namespace kernrl
