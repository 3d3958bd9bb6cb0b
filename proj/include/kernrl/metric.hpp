#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace kernrl {

using ActionId = std::size_t;

/// A state: either a point of R^d or the index of a discrete state.
class Point {
 public:
  Point() = default;

  static Point continuous(std::vector<double> coords) { return Point(std::move(coords)); }
  static Point discrete(std::size_t id) { return Point(id); }

  bool is_discrete() const { return std::holds_alternative<std::size_t>(value_); }
  std::span<const double> coords() const;
  std::size_t id() const;
  std::size_t dimension() const { return is_discrete() ? 0 : coords().size(); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  explicit Point(std::vector<double> coords) : value_(std::move(coords)) {}
  explicit Point(std::size_t id) : value_(id) {}

  std::variant<std::vector<double>, std::size_t> value_;
};

/// A state-action pair, the domain of the kernel.
struct StateAction {
  Point state;
  ActionId action = 0;

  friend bool operator==(const StateAction&, const StateAction&) = default;
};

enum class StateMetric { euclidean, discrete };

enum class ActionCrossRule {
  same_action_only,  ///< pairs with different actions are infinitely far apart
  additive,          ///< rho_X(x, x') + action_gap * [a != a']
};

struct MetricSpec {
  StateMetric state_metric = StateMetric::euclidean;
  ActionCrossRule cross_rule = ActionCrossRule::same_action_only;
  double action_gap = 0.0;
};

/// Distance between two states. Throws InvalidInput if the points live in different spaces.
double state_distance(const MetricSpec& spec, const Point& x, const Point& y);

/// Distance between state-action pairs; +infinity across actions under same_action_only.
double distance(const MetricSpec& spec, const StateAction& u, const StateAction& v);

}  // namespace kernrl
